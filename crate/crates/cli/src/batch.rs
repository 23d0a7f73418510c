use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde_json::json;
use sha2::{Digest, Sha256};
use steadydim::{analyze, SamplerConfig};

use crate::{emit, load_network, Failure};

/// Seed for one file, derived from the run seed and the file's path
/// relative to the batch directory.
pub fn file_seed(seed: u64, relative: &str) -> u64 {
    let mut hasher = Sha256::new();
    hasher.update(seed.to_le_bytes());
    hasher.update(relative.as_bytes());
    let digest = hasher.finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("digest has 32 bytes"))
}

fn crn_files(dir: &Path) -> Result<Vec<PathBuf>, Failure> {
    let entries = fs::read_dir(dir).map_err(|e| Failure::usage(format!("cannot read {}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|ext| ext == "crn"))
        .collect();
    files.sort();
    Ok(files)
}

/// Analyzes every `.crn` file in `dir`, printing one JSON line per file in
/// path order. Fails with the worst per-file exit code.
pub fn analyze_dir(dir: &Path, cfg: &SamplerConfig) -> Result<(), Failure> {
    let files = crn_files(dir)?;
    let results: Vec<(String, Result<_, Failure>)> = files
        .par_iter()
        .map(|path| {
            let relative = path.strip_prefix(dir).unwrap_or(path).to_string_lossy().into_owned();
            let file_cfg = SamplerConfig {
                seed: file_seed(cfg.seed, &relative),
                ..cfg.clone()
            };
            let result = load_network(path).and_then(|net| analyze(&net, &file_cfg).map_err(Failure::from));
            (relative, result)
        })
        .collect();

    let mut worst: Option<Failure> = None;
    for (relative, result) in results {
        let line = match result {
            Ok(report) => json!({ "path": relative, "report": report }),
            Err(f) => {
                let line = json!({ "path": relative, "error": f.message, "exit_code": f.code });
                if worst.as_ref().is_none_or(|w| f.code > w.code) {
                    worst = Some(f);
                }
                line
            }
        };
        emit(&line.to_string());
    }
    match worst {
        Some(f) => Err(f),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_depend_on_seed_and_path() {
        let a = file_seed(0, "a.crn");
        assert_eq!(a, file_seed(0, "a.crn"));
        assert_ne!(a, file_seed(1, "a.crn"));
        assert_ne!(a, file_seed(0, "b.crn"));
    }
}
