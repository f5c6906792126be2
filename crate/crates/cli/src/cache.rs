//! On-disk cache of ideal components, one file per `(shape, γ, d)`.
//!
//! A file holds the rendered rows of the stored part of the degree `d`
//! component, one per line. Unreadable or malformed files count as misses.

use std::path::{Path, PathBuf};

use qdet_core::factor::with_ideal;
use qdet_core::minors::MinorIndex;
use qdet_core::qmatrix::MatrixShape;
use sha2::{Digest, Sha256};

use crate::parse::parse_expression;

const FORMAT: &str = "qdet-ideal-v1";

pub fn component_path(dir: &Path, shape: MatrixShape, gamma: &MinorIndex, d: usize) -> PathBuf {
    let key = format!("{FORMAT}|{}x{}|{gamma}|{d}", shape.m(), shape.n());
    let digest = Sha256::digest(key.as_bytes());
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    dir.join(format!("{hex}.ideal"))
}

fn load(path: &Path, shape: MatrixShape) -> Option<Vec<qdet_core::qmatrix::NCPoly>> {
    let text = std::fs::read_to_string(path).ok()?;
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| parse_expression(l, shape).ok())
        .collect()
}

/// Seeds the shared tower from consecutive cached degrees.
pub fn warm(dir: &Path, shape: MatrixShape, gamma: &MinorIndex) {
    let _ = with_ideal(shape, gamma, |tower| {
        let mut d = tower.built_degree().map_or(0, |b| b + 1);
        while let Some(rows) = load(&component_path(dir, shape, gamma, d), shape) {
            if !tower.seed_component(d, &rows)? {
                break;
            }
            d += 1;
        }
        Ok(())
    });
}

/// Writes every built degree that is not cached yet.
pub fn store(dir: &Path, shape: MatrixShape, gamma: &MinorIndex) {
    if std::fs::create_dir_all(dir).is_err() {
        return;
    }
    let _ = with_ideal(shape, gamma, |tower| {
        let Some(top) = tower.built_degree() else {
            return Ok(());
        };
        for d in 0..=top {
            let path = component_path(dir, shape, gamma, d);
            if path.exists() {
                continue;
            }
            let mut text = String::new();
            for row in tower.component_rows(d)? {
                text.push_str(&row.to_string());
                text.push('\n');
            }
            let tmp = path.with_extension(format!("tmp{}", std::process::id()));
            if std::fs::write(&tmp, text).is_ok() {
                let _ = std::fs::rename(&tmp, &path);
            }
        }
        Ok(())
    });
}
