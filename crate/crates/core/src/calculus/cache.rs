use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::thread;
use std::time::{Duration, Instant};

use super::{CalculusError, LawKey, LawKind, UniversalPolynomial};
use crate::substrate::SparsePoly;

const MAGIC: &str = "WITTPOLY v1";
const LOCK_NAME: &str = ".writer.lock";
const LOCK_WAIT: Duration = Duration::from_secs(30);

/// Directory of generated universal polynomials, one file per (p, n, kind).
///
/// Writers serialize on a lock file in the directory and publish each file by
/// atomic rename, so readers never observe a partial file.
#[derive(Clone, Debug)]
pub struct PolyCache {
    dir: PathBuf,
}

struct WriterLock(PathBuf);

impl Drop for WriterLock {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.0);
    }
}

fn io_err(e: std::io::Error) -> CalculusError {
    CalculusError::Io(e.to_string())
}

impl PolyCache {
    pub fn open(dir: impl AsRef<Path>) -> Result<Self, CalculusError> {
        let dir = dir.as_ref().to_path_buf();
        fs::create_dir_all(&dir).map_err(io_err)?;
        Ok(PolyCache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, key: LawKey) -> PathBuf {
        self.dir.join(format!("p{}_n{}_{}.wpoly", key.p, key.n, key.kind))
    }

    fn lock(&self) -> Result<WriterLock, CalculusError> {
        let path = self.dir.join(LOCK_NAME);
        let start = Instant::now();
        loop {
            match fs::OpenOptions::new().write(true).create_new(true).open(&path) {
                Ok(_) => return Ok(WriterLock(path)),
                Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => {
                    if start.elapsed() > LOCK_WAIT {
                        return Err(CalculusError::Io(format!(
                            "cache {} is locked by another writer ({})",
                            self.dir.display(),
                            path.display()
                        )));
                    }
                    thread::sleep(Duration::from_millis(20));
                }
                Err(e) => return Err(io_err(e)),
            }
        }
    }

    pub fn store(&self, poly: &UniversalPolynomial) -> Result<PathBuf, CalculusError> {
        let _guard = self.lock()?;
        let path = self.path(poly.key());
        let tmp = path.with_extension("tmp");
        {
            let mut f = fs::File::create(&tmp).map_err(io_err)?;
            f.write_all(render(poly).as_bytes()).map_err(io_err)?;
            f.sync_all().map_err(io_err)?;
        }
        fs::rename(&tmp, &path).map_err(io_err)?;
        Ok(path)
    }

    pub fn load(&self, key: LawKey) -> Result<UniversalPolynomial, CalculusError> {
        let path = self.path(key);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Err(CalculusError::CacheMiss(key)),
            Err(e) => return Err(io_err(e)),
        };
        parse(&path.display().to_string(), key, &text)
    }

    /// Loads levels 0..=n, generating and storing whatever is missing.
    pub fn load_or_generate(&self, p: u64, n: usize, kind: LawKind) -> Result<Vec<UniversalPolynomial>, CalculusError> {
        let mut out = Vec::with_capacity(n + 1);
        let mut generated: Option<Vec<UniversalPolynomial>> = None;
        for m in 0..=n {
            match self.load(LawKey { p, n: m, kind }) {
                Ok(u) => out.push(u),
                Err(CalculusError::CacheMiss(_)) => {
                    if generated.is_none() {
                        generated = Some(super::generate(p, n, kind)?);
                    }
                    let u = generated.as_ref().unwrap()[m].clone();
                    self.store(&u)?;
                    out.push(u);
                }
                Err(e) => return Err(e),
            }
        }
        Ok(out)
    }

    /// Keys of all cache files present, sorted.
    pub fn entries(&self) -> Result<Vec<LawKey>, CalculusError> {
        let mut keys = Vec::new();
        for entry in fs::read_dir(&self.dir).map_err(io_err)? {
            let name = entry.map_err(io_err)?.file_name();
            if let Some(key) = key_from_file_name(&name.to_string_lossy()) {
                keys.push(key);
            }
        }
        keys.sort();
        Ok(keys)
    }
}

fn key_from_file_name(name: &str) -> Option<LawKey> {
    let stem = name.strip_suffix(".wpoly")?;
    let mut parts = stem.splitn(3, '_');
    let p = parts.next()?.strip_prefix('p')?.parse().ok()?;
    let n = parts.next()?.strip_prefix('n')?.parse().ok()?;
    let kind = parts.next()?.parse().ok()?;
    Some(LawKey { p, n, kind })
}

fn header(key: LawKey) -> String {
    format!("{MAGIC} p={} n={} kind={}", key.p, key.n, key.kind)
}

fn render(poly: &UniversalPolynomial) -> String {
    format!(
        "{}\n{}end {}\n",
        header(poly.key()),
        poly.body.to_text(),
        poly.body.len()
    )
}

fn parse_header(line: &str) -> Option<LawKey> {
    let rest = line.strip_prefix(MAGIC)?.strip_prefix(' ')?;
    let mut fields = rest.split(' ');
    let p = fields.next()?.strip_prefix("p=")?.parse().ok()?;
    let n = fields.next()?.strip_prefix("n=")?.parse().ok()?;
    let kind = fields.next()?.strip_prefix("kind=")?.parse().ok()?;
    if fields.next().is_some() {
        return None;
    }
    Some(LawKey { p, n, kind })
}

fn parse(path: &str, key: LawKey, text: &str) -> Result<UniversalPolynomial, CalculusError> {
    let fmt_err = |message: String| CalculusError::FormatError {
        path: path.to_string(),
        message,
    };
    let (first, rest) = text.split_once('\n').ok_or_else(|| fmt_err("missing header".into()))?;
    let found = parse_header(first).ok_or_else(|| fmt_err(format!("bad header `{first}`")))?;
    if found != key {
        return Err(CalculusError::KeyMismatch {
            path: path.to_string(),
            expected: key,
            found,
        });
    }
    // the trailer guards against truncation: `end <term count>` on the last line
    let body = rest
        .strip_suffix('\n')
        .ok_or_else(|| fmt_err("file does not end with a newline (truncated?)".into()))?;
    let (body, trailer) = match body.rfind('\n') {
        Some(i) => (&body[..=i], &body[i + 1..]),
        None => ("", body),
    };
    let count: usize = trailer
        .strip_prefix("end ")
        .and_then(|c| c.parse().ok())
        .ok_or_else(|| fmt_err("missing `end` trailer (truncated?)".into()))?;
    let poly = SparsePoly::from_text(&key.kind.vars(key.n), body, 2).map_err(|e| fmt_err(e.to_string()))?;
    if poly.len() != count {
        return Err(fmt_err(format!("trailer announces {count} terms, found {}", poly.len())));
    }
    Ok(UniversalPolynomial {
        p: key.p,
        level: key.n,
        kind: key.kind,
        body: poly,
    })
}
