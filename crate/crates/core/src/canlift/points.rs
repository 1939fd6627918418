use std::fmt;

use num_bigint::BigInt;
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{division_polynomial, CanLiftError, EtaleKernel};
use crate::substrate::{BigZmod, GaloisRing, LocalRing, Ring, UniPoly};

type Gp = UniPoly<Vec<u64>>;

/// Cross-check of an étale kernel polynomial against honest points over the
/// Galois ring GR(p^k, r), r the order of the unit root mod p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointCheck {
    pub unit_root_order: usize,
    /// Roots of h mod p in 𝔽_{p^r}, all of them.
    pub residue_roots: usize,
    /// A point Q over GR(p^k, r) with x(Q) a root of h.
    pub x: String,
    pub y: String,
    /// [p]Q = O, checked as [p − 1]Q = −Q.
    pub order_p: bool,
    /// ∏_{i=1}^{(p−1)/2} (X − x([i]Q)) has coefficients in ℤ/p^k and equals h.
    pub kernel_matches: bool,
    /// h mod p divides ψ_p mod p of the curve carrying the kernel.
    pub divides_division_polynomial: bool,
    /// ψ_p mod p equals its leading coefficient times (h mod p)^p.
    pub division_polynomial_is_pth_power: bool,
}

impl PointCheck {
    pub fn passed(&self) -> bool {
        self.order_p && self.kernel_matches && self.divides_division_polynomial
    }
}

impl fmt::Display for PointCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "unit_root_order = {}", self.unit_root_order)?;
        writeln!(f, "residue_roots = {}", self.residue_roots)?;
        writeln!(f, "point = ({}, {})", self.x, self.y)?;
        writeln!(f, "order_p = {}", self.order_p)?;
        writeln!(f, "kernel_from_points = {}", self.kernel_matches)?;
        writeln!(f, "divides_psi_p_mod_p = {}", self.divides_division_polynomial)?;
        write!(f, "psi_p_mod_p_is_pth_power = {}", self.division_polynomial_is_pth_power)
    }
}

fn multiplicative_order(a: u64, p: u64) -> usize {
    let mut x = a % p;
    let mut n = 1;
    while x != 1 {
        x = x * a % p;
        n += 1;
    }
    n
}

fn to_gr(gr: &GaloisRing, h: &UniPoly<BigInt>) -> Gp {
    UniPoly::new(gr, h.coeffs().iter().map(|c| gr.from_int(c)).collect())
}

fn random_elem(field: &GaloisRing, rng: &mut ChaCha8Rng) -> Vec<u64> {
    (0..field.degree()).map(|_| rng.gen_range(0..field.prime())).collect()
}

/// Roots in 𝔽_q of a polynomial over 𝔽_q (q odd), by equal-degree splitting
/// of gcd(f, X^q − X). Sorted, without multiplicity.
pub(super) fn field_roots(field: &GaloisRing, f: &Gp, rng: &mut ChaCha8Rng) -> Result<Vec<Vec<u64>>, CanLiftError> {
    let q = num_traits::pow(BigInt::from(field.prime()), field.degree());
    let x = UniPoly::x(field);
    let f = f.monic(field)?;
    let xq = x.pow_mod(field, &q, &f)?;
    let mut pending = vec![f.gcd(field, &xq.sub(field, &x))?];
    let half = (&q - 1u32) / 2u32;
    let one = UniPoly::constant(field, field.one());
    let mut roots = Vec::new();
    while let Some(g) = pending.pop() {
        match g.degree() {
            None | Some(0) => {}
            Some(1) => roots.push(field.neg(&g.coeff(field, 0))),
            Some(_) => loop {
                let shift = UniPoly::new(field, vec![random_elem(field, rng), field.one()]);
                let t = shift.pow_mod(field, &half, &g)?.sub(field, &one);
                let s = g.gcd(field, &t)?;
                let ds = s.degree().unwrap_or(0);
                if ds > 0 && Some(ds) < g.degree() {
                    let (other, _) = g.divrem(field, &s)?;
                    pending.push(s);
                    pending.push(other);
                    break;
                }
            },
        }
    }
    roots.sort();
    Ok(roots)
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Point {
    Zero,
    Affine(Vec<u64>, Vec<u64>),
}

struct Curve<'a> {
    gr: &'a GaloisRing,
    a: Vec<u64>,
}

impl Curve<'_> {
    fn add(&self, p: &Point, q: &Point) -> Result<Point, CanLiftError> {
        let r = self.gr;
        let (x1, y1, x2, y2) = match (p, q) {
            (Point::Zero, _) => return Ok(q.clone()),
            (_, Point::Zero) => return Ok(p.clone()),
            (Point::Affine(x1, y1), Point::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let lambda = if x1 == x2 {
            if r.is_zero(&r.add(y1, y2)) {
                return Ok(Point::Zero);
            }
            if y1 != y2 {
                return Err(CanLiftError::BadReduction("points agree in x only modulo a non-unit".into()));
            }
            let num = r.add(&r.scale(3, &r.mul(x1, x1)), &self.a);
            let den = r
                .inv(&r.scale(2, y1))
                .ok_or_else(|| CanLiftError::BadReduction("doubling a point with y ≡ 0".into()))?;
            r.mul(&num, &den)
        } else {
            let den = r
                .inv(&r.sub(x2, x1))
                .ok_or_else(|| CanLiftError::BadReduction("points congruent modulo p".into()))?;
            r.mul(&r.sub(y2, y1), &den)
        };
        let x3 = r.sub(&r.sub(&r.mul(&lambda, &lambda), x1), x2);
        let y3 = r.sub(&r.mul(&lambda, &r.sub(x1, &x3)), y1);
        Ok(Point::Affine(x3, y3))
    }
}

/// Builds the étale subgroup from points: the unit root λ ≡ a_p (mod p) has
/// order r in 𝔽_p^×, so the subgroup's points live over GR(p^k, r). A root of
/// h mod p is found by splitting over 𝔽_{p^r}, lifted by Newton's method to a
/// point Q over GR(p^k, r), and the multiples of Q are compared with h.
pub fn etale_points_check(kernel: &EtaleKernel) -> Result<PointCheck, CanLiftError> {
    let curve = &kernel.quotient;
    let (p, k) = (curve.prime(), curve.precision());
    let d = ((p - 1) / 2) as usize;
    let trace = curve.trace();
    let lambda = trace.rem_euclid(p as i64) as u64;
    if lambda == 0 {
        return Err(CanLiftError::NotOrdinary { trace });
    }
    let r = multiplicative_order(lambda, p);
    let gr = GaloisRing::new(p, k, r)?;
    let field = gr.residue_field();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + p);

    let h_res = to_gr(&field, &kernel.poly);
    let roots = field_roots(&field, &h_res, &mut rng)?;
    let x0 = roots
        .first()
        .ok_or_else(|| CanLiftError::BadReduction(format!("kernel polynomial has no root over GF({p}^{r})")))?;

    let h_gr = to_gr(&gr, &kernel.poly);
    let x = h_gr.hensel_root(&gr, x0)?;
    let a = gr.from_int(curve.a());
    let b = gr.from_int(curve.b());
    let fx = gr.add(&gr.add(&gr.pow(&x, 3), &gr.mul(&a, &x)), &b);
    let fx_res = gr.reduce_to(&field, &fx);
    let sq = UniPoly::new(&field, vec![field.neg(&fx_res), field.zero(), field.one()]);
    let y0 = field_roots(&field, &sq, &mut rng)?
        .into_iter()
        .next()
        .ok_or_else(|| CanLiftError::BadReduction("y² = f(x) has no solution over the residue field".into()))?;
    let ysq = UniPoly::new(&gr, vec![gr.neg(&fx), gr.zero(), gr.one()]);
    let y = ysq.hensel_root(&gr, &y0)?;

    let e = Curve { gr: &gr, a };
    let q = Point::Affine(x.clone(), y.clone());
    let mut multiples = vec![q.clone()];
    for _ in 2..p {
        let next = e.add(multiples.last().unwrap(), &q)?;
        multiples.push(next);
    }
    let order_p = *multiples.last().unwrap() == Point::Affine(x.clone(), gr.neg(&y));

    let mut from_points = UniPoly::constant(&gr, gr.one());
    for m in &multiples[..d] {
        let Point::Affine(xi, _) = m else {
            return Err(CanLiftError::BadReduction("a small multiple of Q vanished".into()));
        };
        from_points = from_points.mul(&gr, &UniPoly::new(&gr, vec![gr.neg(xi), gr.one()]));
    }
    let kernel_matches = from_points == h_gr;

    let fp = BigZmod::prime_power(p, 1);
    let psi = division_polynomial(&fp, &fp.from_int(curve.a()), &fp.from_int(curve.b()), p as usize);
    let h_p = UniPoly::new(&fp, kernel.poly.coeffs().iter().map(|c| fp.from_int(c)).collect());
    let divides = psi.rem(&fp, &h_p)?.is_zero();
    let pth = h_p.pow(&fp, p).scale(&fp, psi.leading().unwrap());
    Ok(PointCheck {
        unit_root_order: r,
        residue_roots: roots.len(),
        x: gr.format(&x),
        y: gr.format(&y),
        order_p,
        kernel_matches: kernel_matches && roots.len() == d,
        divides_division_polynomial: divides,
        division_polynomial_is_pth_power: pth == psi,
    })
}
