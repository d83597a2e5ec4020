//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, Output};

use fvs_core::generators::{
    gen_3formula, gen_disk_digraph, gen_grid, gen_hitting_set, gen_random_planar, gen_random_subgrid,
    gen_structured_2formula, or_gadget, reduce_2formula_to_dfvs, reduce_3formula_to_2formula, reduce_hs_to_3formula,
};
use fvs_core::oracle::{
    extendable_ordering, hs_bruteforce, min_dfas_bruteforce, min_dfas_within, min_dfvs_bruteforce, min_dfvs_within,
    perm_formula_sat, OracleLimits,
};
use fvs_core::patterns::{
    clique_number, count_noncrossing, enumerate_noncrossing, generate, induced_pattern, simplify, ChordRelation,
};
use fvs_core::planar::{build_sc_heuristic, parse_sc, validate_sc, write_sc};
use fvs_core::planar_dp::solve_dfvs_planar_full;
use fvs_core::solution::check_solution;
use fvs_core::treewidth::{make_nice, solve_dfas_tw, solve_dfvs_tw, td_exact_small};
use fvs_core::{ArcSet, DiGraph, Embedding, OracleResult, ScDecomposition, VertexSet};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn witness_ok(g: &DiGraph, r: &OracleResult, what: &str) -> Result<(), String> {
    ensure(r.witness.len() == r.optimum, || {
        format!("{what}: witness size {} vs optimum {}", r.witness.len(), r.optimum)
    })?;
    check_solution(g, &r.witness).map_err(|e| format!("{what}: witness rejected: {e}"))
}

fn tw_vs_oracle(g: &DiGraph) -> Result<(), String> {
    let td = td_exact_small(g).map_err(|e| e.to_string())?;
    let nice = make_nice(&td, td.root());
    let v = solve_dfvs_tw(g, &nice).map_err(|e| e.to_string())?;
    let a = solve_dfas_tw(g, &nice).map_err(|e| e.to_string())?;
    let ov = min_dfvs_bruteforce(g).map_err(|e| e.to_string())?;
    let oa = min_dfas_bruteforce(g).map_err(|e| e.to_string())?;
    ensure(v.optimum == ov.optimum, || format!("dfvs {} vs oracle {} on {:?}", v.optimum, ov.optimum, g.arcs()))?;
    ensure(a.optimum == oa.optimum, || format!("dfas {} vs oracle {} on {:?}", a.optimum, oa.optimum, g.arcs()))?;
    witness_ok(g, &v, "dfvs")?;
    witness_ok(g, &a, "dfas")
}

fn random_digraph(rng: &mut ChaCha8Rng) -> DiGraph {
    let n = rng.gen_range(5..=8);
    let p = rng.gen_range(0.15..0.5);
    let mut g = DiGraph::new(n);
    for u in 1..=n {
        for v in 1..=n {
            if u != v && rng.gen_bool(p) {
                g.add_arc(u, v).unwrap();
            }
        }
    }
    g
}

fn general_dp() -> Check {
    let mut exhaustive = 0;
    for n in 1..=4usize {
        let pairs: Vec<(usize, usize)> =
            (1..=n).flat_map(|u| (1..=n).filter(move |&v| v != u).map(move |v| (u, v))).collect();
        for mask in 0u32..1 << pairs.len() {
            let g =
                DiGraph::from_arcs(n, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &a)| a))
                    .unwrap();
            tw_vs_oracle(&g)?;
            exhaustive += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..300 {
        tw_vs_oracle(&random_digraph(&mut rng))?;
    }
    Ok(format!("{exhaustive} exhaustive and 300 random digraphs"))
}

fn planar_dp() -> Check {
    let mut total = 0;
    for seed in 0..200 {
        let inst = gen_random_subgrid(3, 4, true, seed).map_err(|e| e.to_string())?;
        let g = &inst.graph;
        let run = solve_dfvs_planar_full(g, &inst.embedding).map_err(|e| e.to_string())?;
        let oracle = min_dfvs_bruteforce(g).map_err(|e| e.to_string())?;
        let td = td_exact_small(g).map_err(|e| e.to_string())?;
        let tw = solve_dfvs_tw(g, &make_nice(&td, td.root())).map_err(|e| e.to_string())?;
        ensure(run.result.optimum == oracle.optimum && oracle.optimum == tw.optimum, || {
            format!("seed {seed}: planar {} oracle {} treewidth {}", run.result.optimum, oracle.optimum, tw.optimum)
        })?;
        witness_ok(g, &run.result, "planar")?;
        total += oracle.optimum;
    }
    Ok(format!("200 subgrids agree, optimum sum {total}"))
}

/// Boundary vertices (in clockwise order) and induced relation of a random disk digraph.
fn disk_corpus() -> Vec<(DiGraph, Vec<usize>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    (0..300)
        .map(|seed| {
            let b = rng.gen_range(3..=8);
            let interior = rng.gen_range(0..=4);
            let keep = [0.5, 0.7, 0.9][rng.gen_range(0..3)];
            let d = gen_disk_digraph(b, interior, keep, seed);
            let size = rng.gen_range(2..=b.min(6));
            let mut t: Vec<usize> = d.boundary.choose_multiple(&mut rng, size).copied().collect();
            t.sort_unstable();
            (d.graph, t)
        })
        .collect()
}

fn pattern_fixpoint() -> Check {
    let mut nontrivial = 0;
    for (i, (g, t)) in disk_corpus().iter().enumerate() {
        let p = induced_pattern(g, t).map_err(|e| e.to_string())?;
        ensure(generate(&p.as_relation()) == p, || {
            format!("instance {i}: gen(P) != P for T={t:?}, arcs {:?}", g.arcs())
        })?;
        if p.pairs().len() > t.len() {
            nontrivial += 1;
        }
    }
    Ok(format!("300 induced patterns are fixpoints ({nontrivial} non-identity)"))
}

fn simplify_ok(r: &ChordRelation, what: &str) -> Result<usize, String> {
    let s = simplify(r).map_err(|e| format!("{what}: {e}"))?;
    let w = clique_number(&s.relation).map_err(|e| format!("{what}: {e}"))?;
    ensure(w <= 6, || format!("{what}: clique number {w} after simplify"))?;
    ensure(generate(&s.relation) == generate(r), || format!("{what}: gen changed"))?;
    ensure(s.crossings.windows(2).all(|c| c[1] < c[0]), || format!("{what}: crossings {:?}", s.crossings))?;
    Ok(s.crossings.len() - 1)
}

/// Points `1..=n` with `m >= 7` pairwise crossing chords of random direction
/// plus a few random chords.
fn clique_relation(rng: &mut ChaCha8Rng) -> ChordRelation {
    let m = rng.gen_range(7..=9);
    let n = 2 * m + rng.gen_range(0..=4);
    let mut pos: Vec<usize> = (1..=n).collect::<Vec<_>>().choose_multiple(rng, 2 * m).copied().collect();
    pos.sort_unstable();
    let mut pairs: Vec<(usize, usize)> =
        (0..m).map(|i| if rng.gen_bool(0.5) { (pos[i], pos[i + m]) } else { (pos[i + m], pos[i]) }).collect();
    for _ in 0..rng.gen_range(0..=4) {
        let s = rng.gen_range(1..=n);
        let t = rng.gen_range(1..=n);
        if s != t {
            pairs.push((s, t));
        }
    }
    ChordRelation::new((1..=n).collect(), pairs).unwrap()
}

fn simplification() -> Check {
    let mut rewrites = 0;
    for (i, (g, t)) in disk_corpus().iter().enumerate() {
        let p = induced_pattern(g, t).map_err(|e| e.to_string())?;
        rewrites += simplify_ok(&p.as_relation(), &format!("disk instance {i}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for i in 0..100 {
        let r = clique_relation(&mut rng);
        let w = clique_number(&r).map_err(|e| e.to_string())?;
        ensure(w >= 7, || format!("synthetic relation {i} has clique number {w}"))?;
        rewrites += simplify_ok(&r, &format!("synthetic relation {i}"))?;
    }
    Ok(format!("400 relations simplified with {rewrites} rewrites"))
}

fn counting() -> Check {
    for n in 3..=6 {
        let (enumerated, best) = enumerate_noncrossing(n).map_err(|e| e.to_string())?;
        let c = count_noncrossing(n).map_err(|e| e.to_string())?;
        ensure(c == enumerated, || format!("n={n}: formula {c} vs enumeration {enumerated}"))?;
        if n == 4 || n == 5 {
            ensure(best == 2 * n - 3, || format!("n={n}: max set {best}"))?;
        }
    }
    let small: Vec<u128> = (3..=5).map(|n| count_noncrossing(n).unwrap()).collect();
    ensure(small == [8, 48, 352], || format!("counts {small:?}"))?;
    Ok("n=3..6 match enumeration; 8, 48, 352; max 2n-3".into())
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

fn or_gadget_check() -> Check {
    let gadget = or_gadget();
    let g = &gadget.graph;
    let t = gadget.terminals;
    let internals: Vec<usize> = gadget.internals.to_vec();
    let arcs: Vec<(usize, usize)> = g.arcs().to_vec();
    let vertex_cuts: Vec<DiGraph> = (0..6)
        .flat_map(|i| (i + 1..6).map(move |j| (i, j)))
        .map(|(i, j)| g.delete(&[internals[i], internals[j]].into(), &ArcSet::new()))
        .collect();
    let arc_cuts: Vec<DiGraph> = (0..arcs.len())
        .flat_map(|i| (i + 1..arcs.len()).map(move |j| (i, j)))
        .map(|(i, j)| g.delete(&VertexSet::new(), &[arcs[i], arcs[j]].into()))
        .collect();
    let orders = permutations(&t);
    ensure(orders.len() == 720, || format!("{} orderings", orders.len()))?;
    for order in &orders {
        let at = |v: usize| order.iter().position(|&x| x == v).unwrap();
        let expected = (0..3).any(|i| at(t[2 * i]) < at(t[2 * i + 1]));
        let by_vertices = vertex_cuts.iter().any(|h| extendable_ordering(h, order));
        let by_arcs = arc_cuts.iter().any(|h| extendable_ordering(h, order));
        ensure(by_vertices == expected && by_arcs == expected, || {
            format!("ordering {order:?}: expected {expected}, vertex cuts {by_vertices}, arc cuts {by_arcs}")
        })?;
    }
    for &v in &internals {
        ensure(!g.delete(&[v].into(), &ArcSet::new()).is_acyclic(), || format!("deleting {v} breaks all cycles"))?;
    }
    for &a in &arcs {
        ensure(!g.delete(&VertexSet::new(), &[a].into()).is_acyclic(), || format!("deleting {a:?} breaks all cycles"))?;
    }
    let v = min_dfvs_bruteforce(g).map_err(|e| e.to_string())?.optimum;
    let a = min_dfas_bruteforce(g).map_err(|e| e.to_string())?.optimum;
    ensure(v == 2 && a == 2, || format!("standalone optima dfvs {v} dfas {a}"))?;
    Ok(format!("720 orderings x ({} vertex + {} arc) deletions; optima 2/2", vertex_cuts.len(), arc_cuts.len()))
}

fn hardness_chain() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut sat = [0usize; 3];
    for i in 0..50u64 {
        let k = rng.gen_range(2..=3);
        let inst = gen_hitting_set(k, rng.gen_range(2..=6), i);
        let phi = reduce_hs_to_3formula(&inst, true).map_err(|e| e.to_string())?;
        let lhs = hs_bruteforce(&inst).map_err(|e| e.to_string())?;
        let rhs = perm_formula_sat(&phi).map_err(|e| e.to_string())?;
        ensure(lhs == rhs, || format!("(a) instance {i}: hitting set {lhs}, formula {rhs}"))?;
        sat[0] += lhs as usize;
    }
    for i in 0..30u64 {
        let phi = gen_3formula(3, rng.gen_range(1..=2), 2, 100 + i);
        let s = reduce_3formula_to_2formula(&phi).map_err(|e| e.to_string())?;
        let lhs = perm_formula_sat(&phi).map_err(|e| e.to_string())?;
        let rhs = perm_formula_sat(&s.psi).map_err(|e| e.to_string())?;
        ensure(lhs == rhs, || format!("(b) formula {i}: 3-formula {lhs}, 2-formula {rhs}"))?;
        let w = s.incidence_td.validate(&s.psi.incidence_graph()).map_err(|e| format!("(b) formula {i}: {e}"))?;
        ensure(w <= 4 * s.k + 3, || format!("(b) formula {i}: star width {w} > {}", 4 * s.k + 3))?;
        let red = reduce_2formula_to_dfvs(&s.psi, Some(&s.incidence_td)).map_err(|e| e.to_string())?;
        red.td.as_ref().unwrap().validate(&red.graph).map_err(|e| format!("(b) formula {i}: lifted: {e}"))?;
        sat[1] += lhs as usize;
    }
    let limits = OracleLimits { max_selections: u64::MAX, ..OracleLimits::default() };
    for i in 0..30u64 {
        let psi = gen_structured_2formula(6, rng.gen_range(1..=3), rng.gen_range(2..=7), 200 + i);
        let red = reduce_2formula_to_dfvs(&psi, None).map_err(|e| e.to_string())?;
        let lhs = perm_formula_sat(&psi).map_err(|e| e.to_string())?;
        let v = min_dfvs_within(&red.graph, red.budget, &limits).map_err(|e| e.to_string())?.is_some();
        let a = min_dfas_within(&red.graph, red.budget, &limits).map_err(|e| e.to_string())?.is_some();
        ensure(lhs == v && v == a, || format!("(c) formula {i}: sat {lhs}, dfvs {v}, dfas {a}"))?;
        sat[2] += lhs as usize;
    }
    Ok(format!("(a) 50 ({} yes), (b) 30 ({} yes), (c) 30 ({} yes); star widths within 4k+3", sat[0], sat[1], sat[2]))
}

/// Rewrites one line of a serialized decomposition so that it can no longer
/// describe a valid decomposition; `None` if the chosen kind does not apply.
fn mutate(text: &str, rng: &mut ChaCha8Rng, n: usize) -> Option<String> {
    let mut lines: Vec<Vec<String>> = text.lines().map(|l| l.split_whitespace().map(String::from).collect()).collect();
    let of = |tag: &str, lines: &[Vec<String>]| -> Vec<usize> {
        (0..lines.len()).filter(|&i| lines[i].first().map(String::as_str) == Some(tag)).collect()
    };
    match rng.gen_range(0..5) {
        0 => {
            let ds: Vec<usize> = of("d", &lines).into_iter().filter(|&i| lines[i].len() > 2).collect();
            let i = *ds.choose(rng)?;
            let j = rng.gen_range(2..lines[i].len());
            lines[i].remove(j);
        }
        1 => {
            let ds: Vec<usize> = of("d", &lines).into_iter().filter(|&i| lines[i].len() > 2).collect();
            let i = *ds.choose(rng)?;
            let present: Vec<usize> = lines[i][2..].iter().map(|t| t.parse().unwrap()).collect();
            let outside: Vec<usize> = (1..=n).filter(|v| !present.contains(v)).collect();
            let j = rng.gen_range(2..lines[i].len());
            lines[i][j] = outside.choose(rng)?.to_string();
        }
        2 => {
            let cs: Vec<usize> = of("c", &lines).into_iter().filter(|&i| lines[i].len() > 3).collect();
            let max_face = cs
                .iter()
                .flat_map(|&i| lines[i][2..].iter().skip(1).step_by(2))
                .map(|t| t.parse::<usize>().unwrap())
                .max()?;
            let i = *cs.choose(rng)?;
            let j = 2 + 2 * rng.gen_range(0..(lines[i].len() - 2) / 2) + 1;
            let old: usize = lines[i][j].parse().unwrap();
            let others: Vec<usize> = (1..=max_face).filter(|&f| f != old).collect();
            lines[i][j] = others.choose(rng)?.to_string();
        }
        3 => {
            let ls = of("l", &lines);
            let (a, b) = (*ls.choose(rng)?, *ls.choose(rng)?);
            if lines[a][2] == lines[b][2] {
                return None;
            }
            lines[b][2] = lines[a][2].clone();
        }
        _ => {
            let ts: Vec<usize> = of("t", &lines).into_iter().filter(|&i| lines[i][2] != "0").collect();
            let i = *ts.choose(rng)?;
            lines[i][2] = "0".into();
        }
    }
    Some(lines.iter().map(|l| l.join(" ") + "\n").collect())
}

fn rejects(g: &DiGraph, emb: &Embedding, text: &str) -> bool {
    match parse_sc(text) {
        Err(_) => true,
        Ok(scd) => validate_sc(g, emb, &scd).is_err(),
    }
}

fn decomposition_validity() -> Check {
    let mut cases: Vec<(DiGraph, Embedding, ScDecomposition)> = Vec::new();
    for seed in 0..40 {
        let inst = gen_random_subgrid(4, 5, seed % 2 == 0, seed).map_err(|e| e.to_string())?;
        let scd = build_sc_heuristic(&inst.graph, &inst.embedding).map_err(|e| format!("subgrid {seed}: {e}"))?;
        cases.push((inst.graph, inst.embedding, scd));
    }
    for seed in 0..30 {
        let inst = gen_random_planar(6 + (seed as usize % 15), seed).map_err(|e| e.to_string())?;
        let scd = build_sc_heuristic(&inst.graph, &inst.embedding).map_err(|e| format!("random planar {seed}: {e}"))?;
        cases.push((inst.graph, inst.embedding, scd));
    }
    for seed in 0..30u64 {
        let (r, c) = (2 + seed as usize % 4, 2 + (seed as usize / 4) % 4);
        let inst = gen_grid(r, c, seed).map_err(|e| e.to_string())?;
        cases.push((inst.graph, inst.embedding, inst.scd));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for (i, (g, emb, scd)) in cases.iter().enumerate() {
        let w = validate_sc(g, emb, scd).map_err(|e| format!("decomposition {i}: {e}"))?;
        ensure(w == scd.width(), || format!("decomposition {i}: width {w} vs {}", scd.width()))?;
        let text = write_sc(scd, g.arc_count());
        ensure(!rejects(g, emb, &text), || format!("decomposition {i}: round trip rejected"))?;
        let mut done = 0;
        while done < 20 {
            if let Some(bad) = mutate(&text, &mut rng, g.id_bound()) {
                ensure(rejects(g, emb, &bad), || format!("decomposition {i}: mutation accepted:\n{bad}"))?;
                done += 1;
            }
        }
    }
    for r in 2..=5 {
        for c in 2..=5 {
            let inst = gen_grid(r, c, 0).map_err(|e| e.to_string())?;
            let w = validate_sc(&inst.graph, &inst.embedding, &inst.scd).map_err(|e| e.to_string())?;
            ensure(w <= r.min(c) + 1, || format!("{r}x{c} grid width {w}"))?;
        }
    }
    Ok(format!(
        "{} decompositions valid, {} mutations rejected, grid widths within min(r,c)+1",
        cases.len(),
        cases.len() * 20
    ))
}

fn fvs(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fvs")).current_dir(dir).args(args).output().expect("run fvs")
}

fn cli_determinism() -> Check {
    let base = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut compared = 0;
    let run = |sub: &str, args: &[&str], outputs: &[&str], compare_stdout: bool| -> Result<usize, String> {
        let mut results = Vec::new();
        for round in ["a", "b"] {
            let dir = base.path().join(sub).join(round);
            std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
            for f in ["tri.graph", "grid.graph", "grid.sc", "rel.txt"] {
                let src = base.path().join(f);
                if src.exists() {
                    std::fs::copy(&src, dir.join(f)).map_err(|e| e.to_string())?;
                }
            }
            if sub == "bench" {
                std::fs::create_dir_all(dir.join("corpus")).map_err(|e| e.to_string())?;
                for f in ["tri.graph", "grid.graph"] {
                    std::fs::copy(base.path().join(f), dir.join("corpus").join(f)).map_err(|e| e.to_string())?;
                }
            }
            let out = fvs(&dir, args);
            ensure(out.status.success(), || format!("{sub} {args:?}: {}", String::from_utf8_lossy(&out.stderr)))?;
            let files: Vec<Vec<u8>> = outputs.iter().map(|f| std::fs::read(dir.join(f)).unwrap_or_default()).collect();
            ensure(files.iter().all(|f| !f.is_empty()), || format!("{sub}: missing output"))?;
            results.push((files, out.stdout));
        }
        ensure(results[0].0 == results[1].0, || format!("{sub} {args:?}: files differ"))?;
        ensure(!compare_stdout || results[0].1 == results[1].1, || format!("{sub} {args:?}: stdout differs"))?;
        Ok(outputs.len().max(1))
    };
    std::fs::write(base.path().join("tri.graph"), "3 3\n1 2\n2 3\n3 1\n").map_err(|e| e.to_string())?;
    std::fs::write(base.path().join("rel.txt"), "1 4\n2 5\n3 6\n6 1\n").map_err(|e| e.to_string())?;
    let seed_dir = base.path();
    let out =
        fvs(seed_dir, &["gen", "--kind", "grid", "--rows", "3", "--cols", "3", "--seed", "4", "--out-prefix", "grid"]);
    ensure(out.status.success(), || "gen grid failed".into())?;

    for kind in ["grid", "random-planar", "hitting-set", "or-gadget", "hardness-chain"] {
        let outputs: &[&str] = match kind {
            "grid" => &["x.graph", "x.sc"],
            "random-planar" | "or-gadget" => &["x.graph"],
            "hitting-set" => &["x.hs"],
            _ => &["x.graph", "x.td", "x.budget"],
        };
        compared +=
            run(&format!("gen-{kind}"), &["gen", "--kind", kind, "--seed", "11", "--out-prefix", "x"], outputs, true)?;
    }
    for method in ["oracle", "treewidth", "planar"] {
        compared += run(
            &format!("solve-{method}"),
            &["solve", "--input", "grid.graph", "--method", method, "--out", "sol.txt"],
            &["sol.txt"],
            false,
        )?;
    }
    compared += run(
        "solve-dfas",
        &["solve", "--input", "tri.graph", "--method", "treewidth", "--problem", "dfas", "--out", "sol.txt"],
        &["sol.txt"],
        false,
    )?;
    compared += run(
        "decompose-tree",
        &["decompose", "--input", "grid.graph", "--kind", "tree", "--out", "d.td"],
        &["d.td"],
        true,
    )?;
    compared += run(
        "decompose-exact",
        &["decompose", "--input", "grid.graph", "--kind", "tree", "--exact", "--out", "d.td"],
        &["d.td"],
        true,
    )?;
    compared +=
        run("decompose-sc", &["decompose", "--input", "grid.graph", "--kind", "sc", "--out", "d.sc"], &["d.sc"], true)?;
    compared += run("validate", &["validate", "--input", "grid.graph", "--sc", "grid.sc"], &[], true)?;
    for op in ["count-noncrossing", "gen", "simplify"] {
        compared += run(
            &format!("patterns-{op}"),
            &["patterns", "--points", "6", "--op", op, "--relation", "rel.txt", "--out", "p.txt"],
            &["p.txt"],
            true,
        )?;
    }
    compared += run("bench", &["bench", "--corpus", "corpus", "--out", "table.txt"], &["table.txt"], false)?;
    Ok(format!("{compared} outputs byte-identical across two runs"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("treewidth DP equals oracle", general_dp),
        ("planar DP equals oracle and treewidth DP", planar_dp),
        ("pattern fixpoint", pattern_fixpoint),
        ("simplification", simplification),
        ("non-crossing counting", counting),
        ("or-gadget", or_gadget_check),
        ("hardness chain", hardness_chain),
        ("decomposition validity", decomposition_validity),
        ("CLI determinism", cli_determinism),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let results: Vec<Check> = std::thread::scope(|s| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|&(_, f)| s.spawn(move || catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| Err(panic_text(&p)))))
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut failed = 0;
    for (i, ((name, _), r)) in criteria.iter().zip(&results).enumerate() {
        match r {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

fn panic_text(p: &Box<dyn std::any::Any + Send>) -> String {
    let msg = p
        .downcast_ref::<String>()
        .cloned()
        .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
        .unwrap_or_default();
    format!("panicked: {msg}")
}
