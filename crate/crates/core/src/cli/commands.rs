use std::path::PathBuf;

use clap::{Args, Subcommand, ValueEnum};
use num_bigint::BigInt;

use super::parse::{self, ParseElem};
use super::{usage, Fail, Out, Res};
use crate::canlift::{
    self, canonical_lift_from, canonical_lift_j, cm_oracle_j, count_points_trace, curve_from_j, division_polynomial,
    etale_kernel_poly, etale_points_check, is_ordinary, velu_quotient, verify_vp_factorization, CmTable, EllipticCurve,
};
use crate::delta::{
    delta_from_frobenius, frobenius_from_delta, hopf_delta_solve, validate_delta, validate_poly_delta, DeltaPolyRing,
    DeltaTower, Sample,
};
use crate::jets::{
    adjunction_check_with, coghost_eval, enumerate_points, jet_presentation, parse_polynomial, parse_presentation, prolong,
    RingPresentation, DEFAULT_BOUND,
};
use crate::substrate::{FiniteLocalRing, Ring, SparsePoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub(crate) enum Tower {
    /// ℤ/p^{m+1} with the Fermat quotient
    Fermat,
    /// ℤ/p^{m+1} with δ = 0 (fails the axioms)
    Zero,
    /// W_m(𝔽_p) with the component shift
    Witt,
    /// (ℤ/p^{m+1})^r with the Fermat quotient in each coordinate
    FermatPower,
}

#[derive(Args, Debug)]
pub(crate) struct TowerArgs {
    #[arg(long, value_enum)]
    tower: Tower,
    #[arg(long)]
    p: u64,
    #[arg(long)]
    levels: usize,
    /// Number of factors for fermat-power
    #[arg(long, default_value_t = 2)]
    rank: usize,
}

#[derive(Args, Debug)]
pub(crate) struct PolyDeltaArgs {
    #[arg(long)]
    p: u64,
    /// Presentation over ℤ, e.g. "Z[T]" or "Z[T,U]/(U^2-T)"
    #[arg(long)]
    ring: String,
    /// Print δ of this polynomial (repeatable)
    #[arg(long = "eval", allow_hyphen_values = true)]
    evals: Vec<String>,
    /// Check the δ axioms on the generators and every --eval polynomial
    #[arg(long)]
    check: bool,
}

#[derive(Subcommand, Debug)]
pub(crate) enum DeltaOp {
    /// Check the δ axioms on every level of a tower
    Validate {
        #[command(flatten)]
        tower: TowerArgs,
        /// Sample this many random pairs instead of all of them
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// δ, τ and φ of x ∈ R_{m+1}
    Apply {
        #[command(flatten)]
        tower: TowerArgs,
        #[arg(long)]
        level: usize,
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// δ on generators from a Frobenius lift φ
    FromFrobenius {
        #[command(flatten)]
        ring: PolyDeltaArgs,
        /// φ of each generator, in order
        #[arg(long = "image", required = true, allow_hyphen_values = true)]
        images: Vec<String>,
    },
    /// φ on generators from δ on generators
    ToFrobenius {
        #[command(flatten)]
        ring: PolyDeltaArgs,
        /// δ of each generator, in order
        #[arg(long = "delta", required = true, allow_hyphen_values = true)]
        deltas: Vec<String>,
    },
    /// δ-structures on the group algebra of μ_{p^{n_1}} × ... compatible with Δ
    SolveMu {
        #[arg(long)]
        p: u64,
        /// n_1,...,n_r
        #[arg(long)]
        exps: String,
        #[arg(long)]
        k: u32,
    },
}

pub(crate) fn delta_cmd(out: &mut Out, op: &DeltaOp) -> Res {
    match op {
        DeltaOp::Validate { tower, random, seed } => {
            let sample = match random {
                Some(count) => Sample::Random { count: *count, seed: *seed },
                None => Sample::Exhaustive,
            };
            let t = tower;
            let report = match t.tower {
                Tower::Fermat => validate_delta(&DeltaTower::fermat(t.p, t.levels)?, sample),
                Tower::Zero => validate_delta(&DeltaTower::zero(t.p, t.levels)?, sample),
                Tower::Witt => validate_delta(&DeltaTower::witt(t.p, t.levels)?, sample),
                Tower::FermatPower => validate_delta(&DeltaTower::fermat_power(t.p, t.levels, t.rank)?, sample),
            };
            out.line(&report);
            Ok(report.passed())
        }
        DeltaOp::Apply { tower: t, level, x } => match t.tower {
            Tower::Fermat => tower_apply(out, &DeltaTower::fermat(t.p, t.levels)?, *level, x),
            Tower::Zero => tower_apply(out, &DeltaTower::zero(t.p, t.levels)?, *level, x),
            Tower::Witt => tower_apply(out, &DeltaTower::witt(t.p, t.levels)?, *level, x),
            Tower::FermatPower => tower_apply(out, &DeltaTower::fermat_power(t.p, t.levels, t.rank)?, *level, x),
        },
        DeltaOp::FromFrobenius { ring, images } => {
            let pres = integral_presentation(&ring.ring)?;
            let phi = polys(&pres, images)?;
            let d = delta_from_frobenius(ring.p, pres.vars(), pres.relations(), &phi)?;
            for (i, g) in d.generator_deltas().iter().enumerate() {
                out.line(format!("delta({}) = {g}", pres.vars().name(i)));
            }
            poly_delta_extras(out, &d, &pres, ring)
        }
        DeltaOp::ToFrobenius { ring, deltas } => {
            let pres = integral_presentation(&ring.ring)?;
            if !pres.relations().is_empty() {
                return Err(usage("to-frobenius takes a free presentation Z[...]"));
            }
            let d = DeltaPolyRing::new(ring.p, pres.vars().clone(), polys(&pres, deltas)?)?;
            for (i, g) in frobenius_from_delta(&d).iter().enumerate() {
                out.line(format!("phi({}) = {g}", pres.vars().name(i)));
            }
            poly_delta_extras(out, &d, &pres, ring)
        }
        DeltaOp::SolveMu { p, exps, k } => {
            let exps: Vec<u32> = parse::list(exps)?;
            let report = hopf_delta_solve(*p, &exps, *k)?;
            out.line(report.to_string().trim_end());
            out.line(format!("only_trivial = {}", report.only_trivial()));
            Ok(true)
        }
    }
}

fn tower_apply<R: ParseElem>(out: &mut Out, t: &DeltaTower<R>, m: usize, x: &str) -> Res {
    if m + 1 >= t.levels() {
        return Err(usage(format!("--level must be below {}", t.levels().saturating_sub(1))));
    }
    let x = t.ring(m + 1).parse_elem(x)?;
    let lo = t.ring(m);
    out.line(format!("delta = {}", lo.format(&t.apply_delta(m, &x))));
    out.line(format!("tau = {}", lo.format(&t.apply_tau(m, &x))));
    out.line(format!("phi = {}", lo.format(&t.frobenius(m, &x))));
    Ok(true)
}

fn integral_presentation(text: &str) -> Result<RingPresentation, Fail> {
    let pres = parse_presentation(text)?;
    if let Some(m) = pres.modulus() {
        return Err(Fail::Domain(format!("δ-rings here are over Z, got Z/{m}")));
    }
    Ok(pres)
}

fn polys(pres: &RingPresentation, texts: &[String]) -> Result<Vec<SparsePoly>, Fail> {
    texts.iter().map(|t| Ok(parse_polynomial(pres.vars(), t)?)).collect()
}

fn poly_delta_extras(out: &mut Out, d: &DeltaPolyRing, pres: &RingPresentation, a: &PolyDeltaArgs) -> Res {
    let evals = polys(pres, &a.evals)?;
    for (text, f) in a.evals.iter().zip(&evals) {
        out.line(format!("delta({}) = {}", text.trim(), d.delta(f)));
    }
    if !a.check {
        return Ok(true);
    }
    let mut samples: Vec<SparsePoly> = (0..pres.vars().len()).map(|i| SparsePoly::var(pres.vars(), i)).collect();
    samples.extend(evals);
    let failures = validate_poly_delta(d, &samples);
    if failures.is_empty() {
        out.line("axioms = pass");
    } else {
        out.line("axioms = FAIL");
        for f in &failures {
            out.line(format!("  {f}"));
        }
    }
    Ok(failures.is_empty())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub(crate) enum Emit {
    /// Generators and relations of J^n(A)
    Presentation,
    /// δ^j of every relation, 0 ≤ j ≤ n
    Prolong,
    /// Points of J^n(A) over --over
    Points,
    /// Compare |J^n(A)(C)| with |A(W_n(C))|
    Adjunction,
    /// Each point of J^n(A)(C) with its n+1 ghost points in A(C)
    Coghost,
}

#[derive(Args, Debug)]
pub(crate) struct JetArgs {
    /// e.g. "Z[t]/(t^2-1)"
    #[arg(long)]
    ring: String,
    #[arg(long)]
    p: u64,
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum)]
    emit: Emit,
    /// Finite local ring C for points, adjunction and coghost
    #[arg(long)]
    over: Option<String>,
    /// Cap on the number of assignments to enumerate
    #[arg(long, default_value_t = DEFAULT_BOUND)]
    bound: u128,
    /// With --emit points: points of A itself rather than of J^n(A)
    #[arg(long)]
    base: bool,
}

pub(crate) fn jet_cmd(out: &mut Out, a: &JetArgs) -> Res {
    let pres = parse_presentation(&a.ring)?;
    let over = || -> Result<FiniteLocalRing, Fail> {
        let spec = a.over.as_deref().ok_or_else(|| usage("this --emit needs --over"))?;
        FiniteLocalRing::parse(spec).map_err(usage)
    };
    match a.emit {
        Emit::Presentation => {
            let jet = jet_presentation(&pres, a.p, a.n)?;
            out.line(format!("generators = {}", jet.presentation.vars().names().join(",")));
            for r in jet.presentation.relations() {
                out.line(format!("relation = {r}"));
            }
        }
        Emit::Prolong => {
            for (i, f) in pres.relations().iter().enumerate() {
                for j in 0..=a.n {
                    out.line(format!("delta^{j}(f{i}) = {}", prolong(f, a.p, j)?));
                }
            }
        }
        Emit::Points => {
            let c = over()?;
            let points = if a.base {
                enumerate_points(&pres, &c, a.bound)?
            } else {
                enumerate_points(&jet_presentation(&pres, a.p, a.n)?.presentation, &c, a.bound)?
            };
            out.line(format!("{} points", points.len()));
            for pt in &points {
                out.line(tuple(&c, pt));
            }
        }
        Emit::Adjunction => {
            let c = over()?;
            let jet = jet_presentation(&pres, a.p, a.n)?;
            let report = adjunction_check_with(&pres, &jet, &c, a.bound)?;
            out.line(format!("count_jet = {}", report.count_jet));
            out.line(format!("count_witt = {}", report.count_witt));
            out.line(format!("pass = {}", report.pass()));
            return Ok(report.pass());
        }
        Emit::Coghost => {
            let c = over()?;
            let jet = jet_presentation(&pres, a.p, a.n)?;
            for pt in enumerate_points(&jet.presentation, &c, a.bound)? {
                let images = coghost_eval(&c, a.p, a.n, &pt)?;
                let shown: Vec<String> = images.iter().map(|q| tuple(&c, q)).collect();
                out.line(format!("{} -> {}", tuple(&c, &pt), shown.join(" ")));
            }
        }
    }
    Ok(true)
}

fn tuple<R: Ring>(r: &R, v: &[R::Elem]) -> String {
    let parts: Vec<String> = v.iter().map(|x| r.format(x)).collect();
    format!("({})", parts.join(","))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub(crate) enum Oracle {
    /// Hilbert class polynomials from the CM table
    Cm,
}

#[derive(Args, Debug)]
pub(crate) struct CanliftArgs {
    #[arg(long)]
    p: u64,
    /// Curve y^2 = x^3 + a x + b over F_p
    #[arg(long, allow_negative_numbers = true)]
    a: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    b: Option<i64>,
    /// Give the curve by its j-invariant mod p instead of --a/--b
    #[arg(long, allow_negative_numbers = true, conflicts_with_all = ["a", "b"])]
    j: Option<i64>,
    /// Precision: work modulo p^k
    #[arg(long)]
    k: u32,
    /// Iterate from the lift with this j mod p^k instead of the naive lift
    #[arg(long, allow_negative_numbers = true)]
    start_j: Option<String>,
    /// Print every j of the iteration
    #[arg(long)]
    trace: bool,
    #[arg(long, value_enum)]
    oracle: Option<Oracle>,
    /// CM table [default: cm_table.txt next to the binary, else the built-in one]
    #[arg(long)]
    cm_table: Option<PathBuf>,
    /// Check V∘F on the lift and rebuild the étale kernel from points
    #[arg(long)]
    verify: bool,
    /// Print the m-th division polynomial of the lift
    #[arg(long)]
    divpoly: Option<usize>,
}

fn cm_table(flag: &Option<PathBuf>) -> Result<CmTable, Fail> {
    if let Some(path) = flag {
        return Ok(CmTable::from_file(path)?);
    }
    let beside = std::env::current_exe()
        .ok()
        .and_then(|exe| exe.parent().map(|d| d.join("cm_table.txt")))
        .filter(|p| p.is_file());
    match beside {
        Some(path) => Ok(CmTable::from_file(&path)?),
        None => Ok(CmTable::embedded()),
    }
}

pub(crate) fn canlift_cmd(out: &mut Out, args: &CanliftArgs) -> Res {
    let p = args.p;
    let (a, b) = match (args.a, args.b, args.j) {
        (Some(a), Some(b), None) => (BigInt::from(a), BigInt::from(b)),
        (None, None, Some(j)) => {
            let c = curve_from_j(&BigInt::from(j), p, 1)?;
            (c.a().clone(), c.b().clone())
        }
        _ => return Err(usage("give either --a and --b, or --j")),
    };
    let residue = EllipticCurve::new(p, 1, &a, &b)?;
    let (ra, rb) = residue.residue_coeffs();
    let (points, trace) = count_points_trace(p, ra, rb);
    out.line(format!("residue_curve = {residue}"));
    out.line(format!("residue_j = {}", residue.j_invariant()));
    out.line(format!("points = {points}"));
    out.line(format!("ordinary = {}", is_ordinary(p, trace)));
    if let Some(m) = args.divpoly {
        let c = EllipticCurve::new(p, args.k, &a, &b)?;
        let psi = division_polynomial(c.ring(), c.a(), c.b(), m);
        out.line(format!("psi_{m} = {}", psi.display(c.ring(), "x")));
    }
    let lift = match &args.start_j {
        Some(j) => {
            let j: BigInt = j.trim().parse().map_err(|_| usage(format!("bad --start-j `{j}`")))?;
            let start = curve_from_j(&j, p, args.k)?;
            if start.reduce(1).j_invariant() != residue.j_invariant() {
                return Err(Fail::Domain("--start-j does not reduce to j(E) mod p".into()));
            }
            canonical_lift_from(&start)?
        }
        None => canonical_lift_j(p, &a, &b, args.k)?,
    };
    out.line(&lift);
    if args.trace {
        let js: Vec<String> = lift.j_trace.iter().map(|j| j.to_string()).collect();
        out.line(format!("trace = {}", js.join(" ")));
    }
    let mut ok = true;
    if args.oracle == Some(Oracle::Cm) {
        let table = cm_table(&args.cm_table)?;
        let oracle = cm_oracle_j(p, &a, &b, args.k, &table)?;
        out.line(format!("oracle_discriminant = {}", oracle.discriminant));
        out.line(format!("oracle_class_number = {}", oracle.class_number));
        out.line(format!("oracle_j = {}", oracle.j));
        let agrees = oracle.j == lift.j;
        out.line(format!("oracle_agrees = {agrees}"));
        ok &= agrees;
    }
    if args.verify {
        let vp = verify_vp_factorization(&lift.curve)?;
        out.line(&vp);
        let kernel = etale_kernel_poly(&lift.curve)?;
        let back = velu_quotient(&kernel.quotient, &kernel.poly)?;
        out.line(format!("velu_quotient_j = {}", back.j_invariant()));
        let check = etale_points_check(&kernel)?;
        out.line(&check);
        ok &= vp.fixed && vp.factorization && check.passed();
    }
    Ok(ok)
}

/// Used by the self-test: lift and oracle for one curve at precision k.
pub(crate) fn lift_agrees(p: u64, a: i64, b: i64, k: u32, table: &CmTable) -> Result<(BigInt, BigInt), canlift::CanLiftError> {
    let (a, b) = (BigInt::from(a), BigInt::from(b));
    let lift = canonical_lift_j(p, &a, &b, k)?;
    let oracle = cm_oracle_j(p, &a, &b, k, table)?;
    Ok((lift.j, oracle.j))
}

