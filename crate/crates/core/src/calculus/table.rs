use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::{generate, CalculusError, LawKind, UniversalPolynomial};

type Memo = Mutex<HashMap<(u64, LawKind), Arc<Vec<UniversalPolynomial>>>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Levels 0..=n of a law family, generated once per process and shared.
/// The returned vector may hold more than n+1 levels.
pub fn laws(p: u64, n: usize, kind: LawKind) -> Result<Arc<Vec<UniversalPolynomial>>, CalculusError> {
    let mut table = memo().lock().unwrap_or_else(|e| e.into_inner());
    if let Some(found) = table.get(&(p, kind)) {
        if found.len() > n {
            return Ok(found.clone());
        }
    }
    let fresh = Arc::new(generate(p, n, kind)?);
    table.insert((p, kind), fresh.clone());
    Ok(fresh)
}

/// Seeds the process-wide table, e.g. from a disk cache. `polys` must be
/// levels 0..=n of one (p, kind) in order; shorter tables are never installed
/// over longer ones.
pub fn install_laws(polys: Vec<UniversalPolynomial>) {
    let Some(first) = polys.first() else { return };
    let key = (first.p, first.kind);
    assert!(
        polys.iter().enumerate().all(|(m, u)| u.level == m && (u.p, u.kind) == key),
        "install_laws expects consecutive levels of one family"
    );
    let mut table = memo().lock().unwrap_or_else(|e| e.into_inner());
    if table.get(&key).map_or(true, |t| t.len() < polys.len()) {
        table.insert(key, Arc::new(polys));
    }
}

/// Namespace for the shared table, for callers that prefer a type.
pub struct LawTable;

impl LawTable {
    pub fn get(p: u64, n: usize, kind: LawKind) -> Result<Arc<Vec<UniversalPolynomial>>, CalculusError> {
        laws(p, n, kind)
    }

    pub fn install(polys: Vec<UniversalPolynomial>) {
        install_laws(polys)
    }
}
