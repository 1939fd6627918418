//! The `wittkit` command line. `run` is the whole program minus process
//! plumbing, so tests can drive it in-process.

mod commands;
mod parse;
mod selftest;

use std::fmt::{self, Write as _};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::calculus::{self, install_laws, verify_identity, LawKind, PolyCache};
use crate::substrate::{
    finite_ring_enumerate, poly_exact_div_by_int, FiniteLocalRing, IntegerRing, LocalRing, Ring, SparsePoly, UniPoly,
    VarList,
};
use crate::witt::{self, EqualizerVerdict, WittRing};

use parse::ParseElem;

/// Exit code, stdout and stderr of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
pub(crate) enum Fail {
    Usage(String),
    Domain(String),
}

macro_rules! domain_errors {
    ($($t:ty),*) => {$(
        impl From<$t> for Fail {
            fn from(e: $t) -> Fail {
                Fail::Domain(e.to_string())
            }
        }
    )*};
}

domain_errors!(
    crate::calculus::CalculusError,
    crate::witt::WittError,
    crate::delta::DeltaError,
    crate::jets::JetError,
    crate::canlift::CanLiftError,
    crate::substrate::SubstrateError
);

pub(crate) fn usage(msg: impl fmt::Display) -> Fail {
    Fail::Usage(msg.to_string())
}

/// Lines of output, one value per line.
#[derive(Default)]
pub(crate) struct Out(String);

impl Out {
    pub(crate) fn line(&mut self, s: impl fmt::Display) {
        writeln!(self.0, "{s}").unwrap();
    }
}

type Res = Result<bool, Fail>;

#[derive(Parser, Debug)]
#[command(name = "wittkit", version, about = "Exact computations with Witt vectors, δ-rings, jets and canonical lifts")]
struct Cli {
    /// Polynomial cache directory [default: $WITT_CACHE, then ./.wittcache]
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate, cache and check universal Witt polynomials
    Poly(PolyArgs),
    /// Finite local rings: elements, roots, Hensel lifting, exact division
    Ring {
        #[command(subcommand)]
        op: RingOp,
    },
    /// Arithmetic in W_n(R) in Buium–Joyal coordinates
    Witt(WittArgs),
    /// δ-ring towers, polynomial δ-rings and the Hopf solver
    Delta {
        #[command(subcommand)]
        op: commands::DeltaOp,
    },
    /// Arithmetic jet rings of finitely presented rings
    Jet(commands::JetArgs),
    /// Canonical lift of an ordinary elliptic curve
    Canlift(commands::CanliftArgs),
    /// Run the built-in invariant suites
    Selftest {
        #[arg(value_enum)]
        level: selftest::Level,
    },
}

#[derive(Args, Debug)]
struct PolyArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    n: usize,
    /// sum, product, negation, ghost, wittghost, bjfromwitt, wittfrombj
    #[arg(long)]
    kind: String,
    /// Print every polynomial
    #[arg(long)]
    show: bool,
    /// Check the defining ghost identities
    #[arg(long)]
    verify: bool,
    /// Write the level files here instead of the cache directory
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum RingOp {
    /// List every element
    Elements {
        #[arg(long)]
        ring: String,
    },
    /// Roots of a polynomial in x over a residue field
    Roots {
        #[arg(long)]
        ring: String,
        poly: String,
    },
    /// Lift a simple root mod p to the whole ring
    Hensel {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        start: String,
        poly: String,
    },
    /// Divide an integer polynomial exactly by a constant
    Divide {
        #[arg(long, allow_negative_numbers = true)]
        by: i64,
        #[arg(long, default_value = "x")]
        vars: String,
        poly: String,
    },
}

#[derive(Args, Debug)]
struct WittArgs {
    #[arg(long)]
    p: u64,
    /// Level of the input vectors (n+1 components)
    #[arg(long)]
    n: usize,
    /// zz for ℤ, or a finite local ring: f<p>, z<m>, gf:<p>:<d>, gr:<p>:<k>:<d>
    #[arg(long)]
    ring: String,
    /// Coordinates of input and output vectors
    #[arg(long, value_enum, default_value_t = Coords::Bj)]
    coords: Coords,
    #[command(subcommand)]
    op: WittOp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Coords {
    Bj,
    Witt,
}

#[derive(Subcommand, Debug)]
enum WittOp {
    Add { a: String, b: String },
    Sub { a: String, b: String },
    Mul { a: String, b: String },
    Neg { a: String },
    /// Multiplicative inverse (finite local base only)
    Inv { a: String },
    /// W_n → W_{n-1}, dropping the last component
    Trunc { a: String },
    /// W_n → W_{n-1}, dropping the first component
    Delta { a: String },
    /// W_n → W_{n-1}
    Frob { a: String },
    /// W_n → W_{n+1}
    Versch { a: String },
    /// Ghost components ⟨Z_0, ..., Z_n⟩
    Ghost { a: String },
    /// W_{m+n} → W_n(W_m), with --split m,n summing to the level
    Copleth {
        #[arg(long)]
        split: String,
        a: String,
    },
    /// Is z ∈ W_n(W_m(R)) in the image of the coplethysm?
    Equalizer { z: String },
    /// ⟨⟨a_0,b_0⟩, ..., ⟨a_n,b_n⟩⟩ ↦ ⟨a_0, ..., a_n, b_n⟩
    Retract { g: String },
    /// Least e with p^e = 0 in W_n(R)
    Nilp,
    /// The table k ↦ k·1 realising ℤ/p^{n+1} ≅ W_n(𝔽_p)
    Iso,
}

/// Entry point for the binary.
pub fn main() {
    let outcome = run(std::env::args_os());
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    std::process::exit(outcome.code);
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let mut out = Out::default();
    let cache = resolve_cache(cli.cache);
    let result = match cli.command {
        Command::Poly(a) => poly_cmd(&mut out, &cache, &a),
        Command::Ring { op } => ring_cmd(&mut out, &op),
        Command::Witt(a) => witt_cmd(&mut out, &cache, &a),
        Command::Delta { op } => commands::delta_cmd(&mut out, &op),
        Command::Jet(a) => commands::jet_cmd(&mut out, &a),
        Command::Canlift(a) => commands::canlift_cmd(&mut out, &a),
        Command::Selftest { level } => selftest::run(&mut out, &cache, level),
    };
    match result {
        Ok(ok) => Outcome {
            code: if ok { 0 } else { 1 },
            stdout: out.0,
            stderr: String::new(),
        },
        Err(Fail::Usage(m)) => Outcome {
            code: 2,
            stdout: out.0,
            stderr: format!("usage error: {m}\n"),
        },
        Err(Fail::Domain(m)) => Outcome {
            code: 1,
            stdout: out.0,
            stderr: format!("error: {m}\n"),
        },
    }
}

fn resolve_cache(flag: Option<PathBuf>) -> PathBuf {
    flag.or_else(|| std::env::var_os("WITT_CACHE").filter(|v| !v.is_empty()).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(".wittcache"))
}

/// Loads the arithmetic laws of W_n for prime p from the cache (generating
/// what is missing) and installs them for this process.
pub(crate) fn install_from_cache(dir: &Path, p: u64, n: usize, kinds: &[LawKind]) -> Result<(), Fail> {
    let cache = PolyCache::open(dir)?;
    for &kind in kinds {
        install_laws(cache.load_or_generate(p, n, kind)?);
    }
    Ok(())
}

fn poly_cmd(out: &mut Out, cache_dir: &Path, a: &PolyArgs) -> Res {
    let kind: LawKind = a.kind.parse().map_err(usage)?;
    let dir = a.out.as_deref().unwrap_or(cache_dir);
    let cache = PolyCache::open(dir)?;
    let family = cache.load_or_generate(a.p, a.n, kind)?;
    out.line(format!("p = {}", a.p));
    out.line(format!("n = {}", a.n));
    out.line(format!("kind = {kind}"));
    for u in &family {
        out.line(format!(
            "level {}: terms={} max_bits={} graded={}",
            u.level,
            u.body.len(),
            u.body.max_coeff_bits(),
            calculus::is_graded(u)
        ));
    }
    if a.show {
        for u in &family {
            out.line(format!("{}_{} = {}", kind, u.level, u.body));
        }
    }
    let mut ok = true;
    if a.verify {
        install_laws(family);
        for check in verify_identity(a.p, a.n, kind)? {
            ok &= check.holds;
            out.line(format!("identity {} = {}", check.key, if check.holds { "holds" } else { "FAILS" }));
        }
    }
    Ok(ok)
}

fn ring_cmd(out: &mut Out, op: &RingOp) -> Res {
    match op {
        RingOp::Elements { ring } => {
            let r = FiniteLocalRing::parse(ring)?;
            let all = finite_ring_enumerate(&r);
            out.line(format!("count = {}", all.len()));
            for x in &all {
                out.line(r.format(x));
            }
        }
        RingOp::Roots { ring, poly } => {
            let r = FiniteLocalRing::parse(ring)?;
            let f = univariate(&r, poly)?;
            let roots = f.find_roots(&r);
            let shown: Vec<String> = roots.iter().map(|x| r.format(x)).collect();
            out.line(format!("roots = {{{}}}", shown.join(",")));
        }
        RingOp::Hensel { ring, start, poly } => {
            let r = FiniteLocalRing::parse(ring)?;
            let f = univariate(&r, poly)?;
            let r0 = r.parse_elem(start)?;
            let root = f.hensel_root(&r, &r0)?;
            out.line(format!("root = {}", r.format(&root)));
        }
        RingOp::Divide { by, vars, poly } => {
            let names: Vec<&str> = vars.split(',').map(str::trim).collect();
            let vars = VarList::new(names);
            let f = crate::jets::parse_polynomial(&vars, poly)?;
            let q = poly_exact_div_by_int(&f, &(*by).into())?;
            out.line(format!("quotient = {q}"));
        }
    }
    Ok(true)
}

fn univariate(r: &FiniteLocalRing, text: &str) -> Result<UniPoly<Vec<u64>>, Fail> {
    let f: SparsePoly = crate::jets::parse_polynomial(&VarList::new(["x"]), text)?;
    Ok(UniPoly::from_sparse(r, &f)?)
}

enum BaseRing {
    Integers,
    Finite(FiniteLocalRing),
}

fn parse_base(spec: &str) -> Result<BaseRing, Fail> {
    match spec.trim().to_ascii_lowercase().as_str() {
        "zz" | "z" | "int" => Ok(BaseRing::Integers),
        _ => Ok(BaseRing::Finite(FiniteLocalRing::parse(spec).map_err(usage)?)),
    }
}

fn witt_cmd(out: &mut Out, cache: &Path, a: &WittArgs) -> Res {
    if let WittOp::Iso = a.op {
        let table = witt::zmod_isomorphism(a.p, a.n)?;
        let w = WittRing::new(FiniteLocalRing::prime_field(a.p)?, a.p, a.n)?;
        for (k, v) in table.iter().enumerate() {
            out.line(format!("{k} -> {}", w.format_vec(v)));
        }
        return Ok(true);
    }
    let mut kinds = vec![LawKind::Sum, LawKind::Product, LawKind::Negation];
    if a.coords == Coords::Witt || matches!(a.op, WittOp::Versch { .. }) {
        kinds.extend([LawKind::BjFromWitt, LawKind::WittFromBj]);
    }
    let level = if matches!(a.op, WittOp::Versch { .. } | WittOp::Equalizer { .. }) { a.n + 1 } else { a.n };
    install_from_cache(cache, a.p, level, &kinds)?;
    match parse_base(&a.ring)? {
        BaseRing::Integers => witt_ops(out, IntegerRing, a),
        BaseRing::Finite(r) => witt_ops(out, r, a),
    }
}

fn angle<R: Ring>(r: &R, v: &[R::Elem]) -> String {
    let parts: Vec<String> = v.iter().map(|x| r.format(x)).collect();
    format!("<{}>", parts.join(","))
}

fn witt_ops<R: ParseElem>(out: &mut Out, base: R, a: &WittArgs) -> Res {
    let w = WittRing::new(base.clone(), a.p, a.n)?;
    let witt_coords = a.coords == Coords::Witt;
    let input = |s: &str| -> Result<Vec<R::Elem>, Fail> {
        let v = w.parse_elem(s)?;
        Ok(if witt_coords { w.from_witt_coords(&v)? } else { v })
    };
    let show = |target: &WittRing<R>, v: Vec<R::Elem>| -> Result<String, Fail> {
        let v = if witt_coords { target.to_witt_coords(&v)? } else { v };
        Ok(target.format_vec(&v))
    };
    let bj_only = || {
        if witt_coords {
            Err(usage("this operation works in Buium–Joyal coordinates only"))
        } else {
            Ok(())
        }
    };
    let line = match &a.op {
        WittOp::Add { a: x, b: y } => show(&w, w.add(&input(x)?, &input(y)?))?,
        WittOp::Sub { a: x, b: y } => show(&w, w.sub(&input(x)?, &input(y)?))?,
        WittOp::Mul { a: x, b: y } => show(&w, w.mul(&input(x)?, &input(y)?))?,
        WittOp::Neg { a: x } => show(&w, w.neg(&input(x)?))?,
        WittOp::Inv { a: x } => match R::witt_inverse(&w, &input(x)?)? {
            Some(v) => show(&w, v)?,
            None => return Err(Fail::Domain("not a unit".into())),
        },
        WittOp::Trunc { a: x } => show(&w.lower()?, w.truncate(&input(x)?)?)?,
        WittOp::Delta { a: x } => {
            bj_only()?;
            show(&w.lower()?, w.delta_shift(&input(x)?)?)?
        }
        WittOp::Frob { a: x } => show(&w.lower()?, w.frobenius(&input(x)?)?)?,
        WittOp::Versch { a: x } => {
            let up = w.raise()?;
            show(&up, up.verschiebung(&input(x)?)?)?
        }
        WittOp::Ghost { a: x } => angle(&base, &w.ghost_map(&input(x)?)?),
        WittOp::Copleth { split, a: x } => {
            bj_only()?;
            let (m, n) = parse::pair(split).ok_or_else(|| usage(format!("bad --split `{split}`, expected m,n")))?;
            if m + n != a.n {
                return Err(usage(format!("--split {m},{n} does not add up to --n {}", a.n)));
            }
            let windows = witt::coplethysm(&input(x)?, m, n)?;
            let inner = WittRing::new(base.clone(), a.p, m)?;
            let outer = WittRing::new(inner, a.p, n)?;
            outer.format(&windows)
        }
        WittOp::Equalizer { z } => {
            bj_only()?;
            let z = parse::nested(&base, z, '(', ')')?;
            if z.len() != a.n + 1 {
                return Err(Fail::Domain(format!("expected {} windows, got {}", a.n + 1, z.len())));
            }
            match witt::equalizer_check(&z)? {
                EqualizerVerdict::InImage(pre) => {
                    format!("in_image preimage={}", w.raise()?.format_vec(&pre))
                }
                EqualizerVerdict::NotInImage { index } => format!("not_in_image index={index}"),
            }
        }
        WittOp::Retract { g } => {
            let g = parse::nested(&base, g, '<', '>')?;
            angle(&base, &witt::ghost_retraction(&g)?)
        }
        WittOp::Nilp => match witt::p_nilpotency_degree(&w) {
            Some(e) => format!("p_nilpotency_degree = {e}"),
            None => "p_nilpotency_degree = none".to_string(),
        },
        WittOp::Iso => unreachable!("handled before the laws are loaded"),
    };
    out.line(line);
    Ok(true)
}

impl ParseElem for FiniteLocalRing {
    fn parse_elem(&self, s: &str) -> Result<Vec<u64>, Fail> {
        Ok(FiniteLocalRing::parse_elem(self, s)?)
    }
    fn witt_inverse(w: &WittRing<Self>, a: &[Vec<u64>]) -> Result<Option<Vec<Vec<u64>>>, Fail> {
        Ok(w.inv(&a.to_vec()))
    }
}
