use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::{division_polynomial, CanLiftError, EllipticCurve};
use crate::substrate::{BigZmod, LocalRing, Ring, UniPoly};

type P = UniPoly<BigInt>;

/// Guard digits on top of k + 2d used for the internal p-adic work.
const GUARD_DIGITS: u32 = 14;

/// ψ_p = G·H over ℤ/p^N, H monic with H ≡ ψ̄_p / lc (mod p) and G ≡ lc.
/// G has degree d = (p − 1)/2 and leading coefficient p; its roots are the
/// x-coordinates of the canonical subgroup.
struct ConnectedSplit {
    n: u32,
    ring: BigZmod,
    g: P,
    h: P,
    lc: BigInt,
}

fn split_division_polynomial(curve: &EllipticCurve) -> Result<ConnectedSplit, CanLiftError> {
    let p = curve.prime();
    let d = ((p - 1) / 2) as usize;
    let n = curve.precision() + 2 * d as u32 + GUARD_DIGITS;
    let ring = BigZmod::prime_power(p, n);
    let a = ring.from_int(curve.a());
    let b = ring.from_int(curve.b());
    let psi = division_polynomial(&ring, &a, &b, p as usize);
    let pb = BigInt::from(p);
    let residue: Vec<BigInt> = psi.coeffs().iter().map(|c| c.mod_floor(&pb)).collect();
    let top = residue
        .iter()
        .rposition(|c| !c.is_zero())
        .ok_or_else(|| CanLiftError::BadReduction("ψ_p vanishes mod p".into()))?;
    let lc = residue[top].clone();
    let lc_inv = ring.inv(&lc).expect("residue leading coefficient is a unit");
    let fp = BigZmod::prime_power(p, 1);
    let lc_inv_p = fp.inv(&lc).unwrap();
    let mut h = UniPoly::new(&ring, residue[..=top].iter().map(|c| fp.mul(c, &lc_inv_p)).collect());
    // each step fixes one more p-adic digit of H
    let mut converged = false;
    for _ in 0..n + 3 {
        let r = psi.rem(&ring, &h)?;
        if r.is_zero() {
            converged = true;
            break;
        }
        h = h.add(&ring, &r.scale(&ring, &lc_inv));
    }
    if !converged {
        return Err(CanLiftError::PrecisionLoss("Hensel factorisation of ψ_p did not converge".into()));
    }
    let (g, rem) = psi.divrem(&ring, &h)?;
    debug_assert!(rem.is_zero());
    if g.degree() != Some(d) || *g.leading().unwrap() != ring.from_int(&pb) {
        return Err(CanLiftError::BadReduction(format!(
            "connected factor of ψ_p has degree {:?}, expected {d} with leading coefficient p",
            g.degree()
        )));
    }
    Ok(ConnectedSplit { n, ring, g, h, lc })
}

fn exact_div(ring: &BigZmod, x: &BigInt, e: u32, what: &str) -> Result<BigInt, CanLiftError> {
    ring.div_by_prime_power(x, e)
        .ok_or_else(|| CanLiftError::PrecisionLoss(format!("{what} is not divisible by p^{e}")))
}

/// Vélu's quotient coefficients from the power sums s_1, s_2, s_3 of the
/// kernel x-coordinates, all multiplied by `unit`.
fn velu_coefficients(r: &BigZmod, a: &BigInt, b: &BigInt, d: i64, s: [&BigInt; 3], unit: &BigInt) -> (BigInt, BigInt) {
    let t = r.add(&r.scale(6, s[1]), &r.mul(&r.scale(2 * d, a), unit));
    let w = r.add(
        &r.add(&r.scale(10, s[2]), &r.mul(&r.scale(6, a), s[0])),
        &r.mul(&r.scale(4 * d, b), unit),
    );
    (r.sub(&r.mul(a, unit), &r.scale(5, &t)), r.sub(&r.mul(b, unit), &r.scale(7, &w)))
}

/// Signed coefficients e_1..e_3 below the leading term; for a monic polynomial
/// these are the elementary symmetric functions of the roots.
fn top_elementary(r: &BigZmod, f: &P, deg: usize) -> [BigInt; 3] {
    let mut e = [r.zero(), r.zero(), r.zero()];
    for (j, ej) in e.iter_mut().enumerate() {
        let j = j + 1;
        if j <= deg {
            let c = f.coeff(r, deg - j);
            *ej = if j % 2 == 1 { r.neg(&c) } else { c };
        }
    }
    e
}

fn power_sums_from_elementary(r: &BigZmod, e: &[BigInt; 3], scale: &BigInt) -> [BigInt; 3] {
    // s1 = e1, s2 = e1² − 2 scale e2, s3 = e1³ − 3 scale e1 e2 + 3 scale² e3;
    // with scale = p this turns p^j e_j into p^j s_j
    let e1sq = r.mul(&e[0], &e[0]);
    let s2 = r.sub(&e1sq, &r.scale(2, &r.mul(scale, &e[1])));
    let s3 = r.add(
        &r.sub(&r.mul(&e1sq, &e[0]), &r.scale(3, &r.mul(scale, &r.mul(&e[0], &e[1])))),
        &r.scale(3, &r.mul(&r.mul(scale, scale), &e[2])),
    );
    [e[0].clone(), s2, s3]
}

fn quotient_from_split(curve: &EllipticCurve, split: &ConnectedSplit) -> Result<EllipticCurve, CanLiftError> {
    let p = curve.prime();
    let d = ((p - 1) / 2) as usize;
    let r = &split.ring;
    let pb = r.from_int(&BigInt::from(p));
    let e = top_elementary(r, &split.g, d);
    let s = power_sums_from_elementary(r, &e, &pb);
    let unit = r.pow(&pb, 3);
    // G = p ∏ (x − x_i), so these are p³ times the power sums
    let s = [r.mul(&r.mul(&pb, &pb), &s[0]), r.mul(&pb, &s[1]), s[2].clone()];
    let (a, b) = (r.from_int(curve.a()), r.from_int(curve.b()));
    let (big_a, big_b) = velu_coefficients(r, &a, &b, d as i64, [&s[0], &s[1], &s[2]], &unit);
    // undo the p³ scaling, then x ↦ x/p², y ↦ y/p³ to an integral model
    let a1 = exact_div(r, &big_a, 7, "scaled a-coefficient")?;
    let b1 = exact_div(r, &big_b, 9, "scaled b-coefficient")?;
    EllipticCurve::new(p, curve.precision(), &a1, &b1)
}

/// Ẽ / C_can, where C_can ⊂ Ẽ[p] is the canonical subgroup (the kernel of the
/// lift of Frobenius). The model is integral and reduces to a curve
/// isomorphic to E.
pub fn frobenius_quotient(curve: &EllipticCurve) -> Result<EllipticCurve, CanLiftError> {
    let split = split_division_polynomial(curve)?;
    quotient_from_split(curve, &split)
}

/// The image F(Ẽ[p]) ⊂ Ẽ' = Ẽ / C_can: the kernel of the isogeny Ẽ' → Ẽ
/// lifting Verschiebung.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaleKernel {
    pub quotient: EllipticCurve,
    /// Monic of degree (p − 1)/2 over ℤ/p^k.
    pub poly: UniPoly<BigInt>,
}

impl EtaleKernel {
    pub fn display(&self) -> String {
        self.poly.display(self.quotient.ring(), "x")
    }
}

/// Power sums ps[0..len) of the roots of a monic polynomial (Newton's identities).
fn root_power_sums(r: &BigZmod, h: &P, len: usize) -> Vec<BigInt> {
    let deg = h.degree().unwrap();
    let e: Vec<BigInt> = (0..=deg)
        .map(|j| {
            let c = h.coeff(r, deg - j);
            if j % 2 == 1 {
                r.neg(&c)
            } else {
                c
            }
        })
        .collect();
    let mut ps = vec![r.from_i64(deg as i64)];
    for m in 1..len {
        let mut s = if m <= deg { r.scale(m as i64, &e[m]) } else { r.zero() };
        if m % 2 == 0 {
            s = r.neg(&s);
        }
        for i in 1..m.min(deg + 1) {
            let t = r.mul(&e[i], &ps[m - i]);
            s = if i % 2 == 1 { r.add(&s, &t) } else { r.sub(&s, &t) };
        }
        ps.push(s);
    }
    ps
}

fn trace_mod(r: &BigZmod, x: &P, ps: &[BigInt]) -> BigInt {
    x.coeffs()
        .iter()
        .zip(ps)
        .fold(r.zero(), |acc, (c, s)| r.add(&acc, &r.mul(c, s)))
}

/// Kohel's x-map numerator for the isogeny with kernel polynomial G/lc(G):
/// X = NG/G² on the unscaled Vélu model.
fn kohel_numerator(r: &BigZmod, curve: &EllipticCurve, g: &P, e1: &BigInt) -> P {
    let p = curve.prime() as i64;
    let (a, b) = (r.from_int(curve.a()), r.from_int(curve.b()));
    let f = UniPoly::new(r, vec![b, a, r.zero(), r.one()]);
    let df = f.derivative(r);
    let dg = g.derivative(r);
    let ddg = dg.derivative(r);
    let lin = UniPoly::new(r, vec![r.scale(-2, e1), r.from_i64(p)]);
    let gg = g.mul(r, g);
    let t1 = lin.mul(r, &gg);
    let t2 = df.mul(r, &dg.mul(r, g)).scale(r, &r.from_i64(2));
    let t3 = f.mul(r, &ddg.mul(r, g).sub(r, &dg.mul(r, &dg))).scale(r, &r.from_i64(4));
    t1.sub(r, &t2).sub(r, &t3)
}

/// The Frobenius quotient Ẽ' = Ẽ / C_can together with the kernel polynomial
/// of F(Ẽ[p]) ⊂ Ẽ', computed from traces of Kohel's x-map over
/// (ℤ/p^N)[x]/(H). At the canonical lift Ẽ' ≅ Ẽ and this is the étale
/// subgroup of Ẽ[p].
pub fn etale_kernel_poly(curve: &EllipticCurve) -> Result<EtaleKernel, CanLiftError> {
    let p = curve.prime();
    let k = curve.precision();
    let d = ((p - 1) / 2) as usize;
    let split = split_division_polynomial(curve)?;
    let quotient = quotient_from_split(curve, &split)?;
    let r = &split.ring;
    let (g, h) = (&split.g, &split.h);
    let big_d = h.degree().unwrap();

    let e1_scaled = r.neg(&g.coeff(r, d - 1));
    let e1 = exact_div(r, &e1_scaled, 1, "first symmetric function of the canonical subgroup")?;
    let ng = kohel_numerator(r, curve, g, &e1);

    // G ≡ lc (mod p), so its inverse mod H is a Newton iteration from 1/lc
    let mut inv = UniPoly::constant(r, r.inv(&split.lc).unwrap());
    let one = UniPoly::constant(r, r.one());
    let two = UniPoly::constant(r, r.from_i64(2));
    let mut ok = false;
    for _ in 0..64 {
        let gi = g.mul(r, &inv).rem(r, h)?;
        if gi == one {
            ok = true;
            break;
        }
        inv = inv.mul(r, &two.sub(r, &gi)).rem(r, h)?;
    }
    if !ok {
        return Err(CanLiftError::PrecisionLoss("G is not invertible modulo H".into()));
    }
    let xi = ng.mul(r, &inv.mul(r, &inv).rem(r, h)?).rem(r, h)?;

    let ps = root_power_sums(r, h, big_d);
    let n = split.n;
    // power sums of the image x-coordinates on the minimal model, mod p^(N−1−2d)
    let tail = BigZmod::prime_power(p, n - 1 - 2 * d as u32);
    let mut sums = Vec::with_capacity(d);
    let mut cur = one.clone();
    for i in 1..=d {
        cur = cur.mul(r, &xi).rem(r, h)?;
        let t = trace_mod(r, &cur, &ps);
        // each image point has p preimages among the roots of H
        let t = exact_div(r, &t, 1, "trace of the x-map")?;
        let t = exact_div(r, &t, 2 * i as u32, "rescaled power sum")?;
        sums.push(tail.from_int(&t));
    }
    // Newton's identities back to elementary symmetric functions
    let mut ee = vec![tail.one()];
    for m in 1..=d {
        let mut s = tail.zero();
        for i in 1..=m {
            let t = tail.mul(&ee[m - i], &sums[i - 1]);
            s = if i % 2 == 1 { tail.add(&s, &t) } else { tail.sub(&s, &t) };
        }
        let m_inv = tail.inv(&tail.from_i64(m as i64)).expect("m < p");
        ee.push(tail.mul(&s, &m_inv));
    }
    let out = quotient.ring().clone();
    let coeffs: Vec<BigInt> = (0..=d)
        .map(|i| {
            let j = d - i;
            let c = out.from_int(&ee[j]);
            if j % 2 == 1 {
                out.neg(&c)
            } else {
                c
            }
        })
        .collect();
    debug_assert_eq!(quotient.precision(), k);
    Ok(EtaleKernel {
        quotient,
        poly: UniPoly::new(&out, coeffs),
    })
}

/// Vélu's formulas for the quotient by the subgroup whose nonzero points have
/// x-coordinates the roots of `h` (monic). A linear `h` whose root is a root
/// of x³ + ax + b is treated as a 2-torsion kernel; otherwise the subgroup has
/// odd order 2·deg h + 1.
pub fn velu_quotient(curve: &EllipticCurve, h: &UniPoly<BigInt>) -> Result<EllipticCurve, CanLiftError> {
    let r = curve.ring();
    let d = h
        .degree()
        .filter(|&d| d >= 1)
        .ok_or_else(|| CanLiftError::BadReduction("kernel polynomial must have positive degree".into()))?;
    if !h.leading().is_some_and(|c| *c == r.one()) {
        return Err(CanLiftError::BadReduction("kernel polynomial must be monic".into()));
    }
    let (a, b) = (curve.a().clone(), curve.b().clone());
    if d == 1 {
        let x0 = r.neg(&h.coeff(r, 0));
        let fx = r.add(&r.add(&r.pow(&x0, 3), &r.mul(&a, &x0)), &b);
        if r.is_zero(&fx) {
            let t = r.add(&r.scale(3, &r.mul(&x0, &x0)), &a);
            let w = r.mul(&x0, &t);
            let big_a = r.sub(&a, &r.scale(5, &t));
            let big_b = r.sub(&b, &r.scale(7, &w));
            return EllipticCurve::new(curve.prime(), curve.precision(), &big_a, &big_b);
        }
    }
    let e = top_elementary(r, h, d);
    let s = power_sums_from_elementary(r, &e, &r.one());
    let (big_a, big_b) = velu_coefficients(r, &a, &b, d as i64, [&s[0], &s[1], &s[2]], &r.one());
    EllipticCurve::new(curve.prime(), curve.precision(), &big_a, &big_b)
}
