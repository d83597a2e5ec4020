use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use fvs_core::digraph::write_digraph;
use fvs_core::generators::{
    gen_grid, gen_hitting_set, gen_random_planar, or_gadget, reduce_2formula_to_dfvs, reduce_3formula_to_2formula,
    reduce_hs_to_3formula,
};
use fvs_core::oracle::{min_dfas_bruteforce, min_dfvs_bruteforce};
use fvs_core::patterns::{clique_number, count_noncrossing, enumerate_noncrossing, generate, simplify, ChordRelation};
use fvs_core::planar::{build_sc_heuristic, parse_sc, validate_sc, write_sc};
use fvs_core::planar_dp::{solve_dfvs_planar, solve_dfvs_planar_full};
use fvs_core::solution::{check_solution, parse_solution, write_solution};
use fvs_core::treewidth::{
    make_nice, parse_td, solve_dfas_tw, solve_dfvs_tw, td_exact_small, td_heuristic, write_td, EXACT_TREEWIDTH_CAP,
};
use fvs_core::{DiGraph, Embedding, Error, OracleResult, Problem, ScDecomposition, TreeDecomposition};

use crate::files::{load_graph, read, write, write_hitting_set, Failure, Outcome};
use crate::{DecompKind, GenKind, Method, PatternOp};

/// Optimum, witness and the width of the structure the method ran on.
pub struct Solved {
    pub result: OracleResult,
    pub width: Option<usize>,
}

fn need_embedding(emb: Option<&Embedding>) -> Outcome<&Embedding> {
    emb.ok_or_else(|| Failure::Core(Error::InvalidInput("input has no embedding section".into())))
}

pub fn run_method(
    g: &DiGraph,
    emb: Option<&Embedding>,
    method: Method,
    problem: Problem,
    td: Option<&TreeDecomposition>,
    sc: Option<&ScDecomposition>,
) -> Outcome<Solved> {
    match method {
        Method::Oracle => {
            let result = match problem {
                Problem::Dfvs => min_dfvs_bruteforce(g)?,
                Problem::Dfas => min_dfas_bruteforce(g)?,
            };
            Ok(Solved { result, width: None })
        }
        Method::Treewidth => {
            let td = match td {
                Some(td) => td.clone(),
                None if g.vertex_count() <= EXACT_TREEWIDTH_CAP => td_exact_small(g)?,
                None => td_heuristic(g),
            };
            let nice = make_nice(&td, td.root());
            let result = match problem {
                Problem::Dfvs => solve_dfvs_tw(g, &nice)?,
                Problem::Dfas => solve_dfas_tw(g, &nice)?,
            };
            Ok(Solved { result, width: Some(nice.width()) })
        }
        Method::Planar => {
            if problem != Problem::Dfvs {
                return Err(Failure::Core(Error::InvalidInput("the planar method solves dfvs only".into())));
            }
            let emb = need_embedding(emb)?;
            match sc {
                Some(scd) => {
                    let result = solve_dfvs_planar(g, emb, scd)?;
                    Ok(Solved { result, width: Some(scd.width()) })
                }
                None => {
                    let run = solve_dfvs_planar_full(g, emb)?;
                    Ok(Solved { result: run.result, width: Some(run.width) })
                }
            }
        }
    }
}

pub fn solve(
    input: &Path,
    td: Option<&Path>,
    sc: Option<&Path>,
    method: Method,
    problem: Problem,
    out: Option<&Path>,
) -> Outcome<()> {
    let (g, emb) = load_graph(input)?;
    if method == Method::Planar && problem == Problem::Dfas {
        return Err(Failure::Core(Error::InvalidInput("the planar method solves dfvs only".into())));
    }
    let td = match td {
        Some(p) => Some(parse_td(&read(p)?, &g)?),
        None => None,
    };
    let sc = match sc {
        Some(p) => Some(parse_sc(&read(p)?)?),
        None => None,
    };
    let start = Instant::now();
    let solved = run_method(&g, emb.as_ref(), method, problem, td.as_ref(), sc.as_ref())?;
    let ms = start.elapsed().as_millis();
    if let Some(out) = out {
        write(out, &write_solution(&solved.result.witness))?;
    }
    let width = solved.width.map_or_else(|| "-".to_string(), |w| w.to_string());
    println!("optimum {} method {} width {width} time_ms {ms}", solved.result.optimum, method.name());
    Ok(())
}

pub fn decompose(input: &Path, kind: DecompKind, exact: bool, out: &Path) -> Outcome<()> {
    let (g, emb) = load_graph(input)?;
    match kind {
        DecompKind::Tree => {
            let td = if exact { td_exact_small(&g)? } else { td_heuristic(&g) };
            let w = td.validate(&g)?;
            write(out, &write_td(&td, g.id_bound()))?;
            println!("width {w}");
        }
        DecompKind::Sc => {
            let emb = need_embedding(emb.as_ref())?;
            let scd = build_sc_heuristic(&g, emb)?;
            let w = validate_sc(&g, emb, &scd)?;
            write(out, &write_sc(&scd, g.arc_count()))?;
            println!("width {w}");
        }
    }
    Ok(())
}

pub struct GenParams {
    pub rows: usize,
    pub cols: usize,
    pub n: usize,
    pub k: usize,
    pub sets: usize,
}

fn with_ext(prefix: &Path, ext: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_os_string();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

pub fn gen(kind: GenKind, seed: u64, prefix: &Path, p: GenParams) -> Outcome<()> {
    let mut files: Vec<(PathBuf, String)> = Vec::new();
    match kind {
        GenKind::Grid => {
            let inst = gen_grid(p.rows, p.cols, seed)?;
            let rot = inst.embedding.neighbor_lists();
            files.push((with_ext(prefix, "graph"), write_digraph(&inst.graph, Some(&rot))));
            files.push((with_ext(prefix, "sc"), write_sc(&inst.scd, inst.graph.arc_count())));
        }
        GenKind::RandomPlanar => {
            let inst = gen_random_planar(p.n, seed)?;
            let rot = inst.embedding.neighbor_lists();
            files.push((with_ext(prefix, "graph"), write_digraph(&inst.graph, Some(&rot))));
        }
        GenKind::HittingSet => {
            files.push((with_ext(prefix, "hs"), write_hitting_set(&gen_hitting_set(p.k, p.sets, seed))));
        }
        GenKind::OrGadget => {
            files.push((with_ext(prefix, "graph"), write_digraph(&or_gadget().graph, None)));
        }
        GenKind::HardnessChain => {
            let hs = gen_hitting_set(p.k, p.sets, seed);
            let phi = reduce_hs_to_3formula(&hs, true)?;
            let sf = reduce_3formula_to_2formula(&phi)?;
            let red = reduce_2formula_to_dfvs(&sf.psi, Some(&sf.incidence_td))?;
            let td = red.td.as_ref().expect("lifted decomposition requested");
            td.validate(&red.graph)?;
            files.push((with_ext(prefix, "graph"), write_digraph(&red.graph, None)));
            files.push((with_ext(prefix, "td"), write_td(td, red.graph.id_bound())));
            files.push((with_ext(prefix, "budget"), format!("budget {}\n", red.budget)));
        }
    }
    for (path, text) in files {
        write(&path, &text)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

pub fn validate(
    input: &Path,
    solution: Option<&Path>,
    td: Option<&Path>,
    sc: Option<&Path>,
    problem: Problem,
) -> Outcome<()> {
    let (g, emb) = load_graph(input)?;
    match (solution, td, sc) {
        (Some(s), None, None) => {
            let w = parse_solution(&read(s)?, problem)?;
            check_solution(&g, &w).map_err(|e| Failure::Rejected(e.to_string()))?;
            println!("valid size {}", w.len());
        }
        (None, Some(t), None) => {
            let td = parse_td(&read(t)?, &g)?;
            println!("valid width {}", td.width());
        }
        (None, None, Some(s)) => {
            let emb = need_embedding(emb.as_ref())?;
            let scd = parse_sc(&read(s)?)?;
            println!("valid width {}", validate_sc(&g, emb, &scd)?);
        }
        _ => return Err(Failure::Usage("give exactly one of --solution, --td, --sc".into())),
    }
    Ok(())
}

pub fn patterns(points: usize, op: PatternOp, relation: Option<&Path>, out: Option<&Path>) -> Outcome<()> {
    let mut s = String::new();
    match op {
        PatternOp::CountNoncrossing => {
            let _ = writeln!(s, "count {}", count_noncrossing(points)?);
            if points <= 8 {
                let (enumerated, max) = enumerate_noncrossing(points)?;
                let _ = writeln!(s, "enumerated {enumerated}");
                let _ = writeln!(s, "max {max}");
            }
        }
        PatternOp::Gen | PatternOp::Simplify => {
            let path = relation.ok_or_else(|| Failure::Usage("--relation is required for this op".into()))?;
            let pairs = crate::files::parse_relation(&read(path)?, points)?;
            let r = ChordRelation::new((1..=points).collect(), pairs)?;
            if op == PatternOp::Gen {
                let p = generate(&r);
                let _ = writeln!(s, "pattern {points}");
                for (a, b) in p.pairs().into_iter().filter(|(a, b)| a != b) {
                    let _ = writeln!(s, "{a} {b}");
                }
            } else {
                let simple = simplify(&r)?;
                let _ = writeln!(
                    s,
                    "relation {points} crossings {} -> {} clique {}",
                    simple.crossings[0],
                    simple.crossings.last().expect("at least the initial count"),
                    clique_number(&simple.relation)?
                );
                for (a, b) in simple.relation.chords() {
                    let _ = writeln!(s, "{a} {b}");
                }
            }
        }
    }
    match out {
        Some(o) => write(o, &s),
        None => {
            print!("{s}");
            Ok(())
        }
    }
}
