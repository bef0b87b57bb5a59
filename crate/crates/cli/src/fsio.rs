//! Atomic file output and the on-disk zero table.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use zeta_fourier::coefficients::ZeroTable;
use zeta_fourier::Complex64;

use crate::error::CliError;

/// Writes `bytes` to a temporary file beside `path`, then renames it over
/// `path`, so readers never see a partial file.
pub fn atomic_write(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let parent = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    std::fs::create_dir_all(&parent).map_err(|e| CliError::io(&parent, e))?;
    let mut tmp = tempfile::NamedTempFile::new_in(&parent).map_err(|e| CliError::io(&parent, e))?;
    tmp.write_all(bytes).map_err(|e| CliError::io(tmp.path(), e))?;
    tmp.as_file().sync_all().map_err(|e| CliError::io(tmp.path(), e))?;
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    Ok(())
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

/// Where `zeros import` stores its table inside the cache directory.
pub fn stored_zeros_path(cache_dir: &Path) -> PathBuf {
    cache_dir.join("zeros.csv")
}

/// `beta,zeta_prime_re,zeta_prime_im` rows.
pub fn zeros_to_csv(table: &ZeroTable) -> String {
    let mut out = String::from("beta,zeta_prime_re,zeta_prime_im\n");
    for (b, d) in table.betas().iter().zip(table.zeta_prime()) {
        let _ = writeln!(out, "{b:.16e},{:.16e},{:.16e}", d.re, d.im);
    }
    out
}

pub fn zeros_from_csv(path: &Path, text: &str) -> Result<ZeroTable, CliError> {
    let bad = |line: usize| {
        CliError::Io(format!(
            "{}: malformed stored zero table at line {line}",
            path.display()
        ))
    };
    let mut betas = Vec::new();
    let mut derivs = Vec::new();
    for (i, line) in text.lines().enumerate().skip(1) {
        let cols: Vec<f64> = line
            .split(',')
            .map(|c| c.parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|_| bad(i + 1))?;
        if cols.len() != 3 {
            return Err(bad(i + 1));
        }
        betas.push(cols[0]);
        derivs.push(Complex64::new(cols[1], cols[2]));
    }
    ZeroTable::with_derivatives(betas, derivs).map_err(CliError::zero_file)
}
