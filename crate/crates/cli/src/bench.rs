use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use fvs_core::Problem;

use crate::commands::run_method;
use crate::files::{load_graph, write, Failure, Outcome};
use crate::Method;

/// Runs `methods` on every `.graph` file under `corpus` (sorted by name).
/// Timings go to stdout; `out` receives only optima, widths and failures.
pub fn run(corpus: &Path, methods: &[Method], problem: Problem, out: Option<&Path>) -> Outcome<()> {
    let mut names: Vec<String> = std::fs::read_dir(corpus)
        .map_err(|e| Failure::Io(corpus.to_path_buf(), e))?
        .filter_map(|e| e.ok())
        .map(|e| e.file_name().to_string_lossy().into_owned())
        .filter(|n| n.ends_with(".graph"))
        .collect();
    names.sort();
    let mut table = String::new();
    let mut disagreements = Vec::new();
    for name in &names {
        let (g, emb) = load_graph(&corpus.join(name))?;
        let mut optima = Vec::new();
        for &m in methods {
            let start = Instant::now();
            match run_method(&g, emb.as_ref(), m, problem, None, None) {
                Ok(s) => {
                    let width = s.width.map_or_else(|| "-".to_string(), |w| w.to_string());
                    let _ = writeln!(table, "{name} {} optimum {} width {width}", m.name(), s.result.optimum);
                    println!(
                        "{name} {} optimum {} time_ms {}",
                        m.name(),
                        s.result.optimum,
                        start.elapsed().as_millis()
                    );
                    optima.push((m, s.result.optimum));
                }
                Err(f) => {
                    let _ = writeln!(table, "{name} {} failed exit {}", m.name(), f.exit_code());
                    println!("{name} {} failed: {f}", m.name());
                }
            }
        }
        if optima.windows(2).any(|w| w[0].1 != w[1].1) {
            disagreements.push(name.clone());
        }
    }
    if let Some(out) = out {
        write(out, &table)?;
    }
    if disagreements.is_empty() {
        Ok(())
    } else {
        Err(Failure::Disagree(format!("methods disagree on {}", disagreements.join(", "))))
    }
}
