//! Loading model files, running the verification suite and rendering
//! reports.

pub mod model_file;
pub mod render;
pub mod report;
pub mod run;

use std::path::{Path, PathBuf};
use std::thread;

pub use model_file::ModelFile;
pub use report::{ModelReport, Report};
pub use run::{run, Command, Options, TorusSource};

/// Model files in `dir`, sorted by path.
pub fn corpus(dir: &Path) -> anyhow::Result<Vec<PathBuf>> {
    let mut paths = Vec::new();
    for entry in std::fs::read_dir(dir).map_err(|e| anyhow::anyhow!("cannot read corpus {}: {e}", dir.display()))? {
        let path = entry?.path();
        if path.extension().is_some_and(|e| e == "model") {
            paths.push(path);
        }
    }
    paths.sort();
    Ok(paths)
}

/// Runs `command` on every file, one worker per model, and merges the
/// results by model name.
pub fn run_all(command: &Command, paths: &[PathBuf], options: Options) -> anyhow::Result<Report> {
    let results: Vec<anyhow::Result<ModelReport>> = thread::scope(|s| {
        let handles: Vec<_> =
            paths.iter().map(|p| s.spawn(move || ModelFile::load(p).and_then(|f| run(command, &f, options)))).collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let models = results.into_iter().collect::<anyhow::Result<Vec<_>>>()?;
    Ok(Report::new(command.name(), models))
}
