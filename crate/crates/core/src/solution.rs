//! Solution files: the size on the first line, then one vertex id per line
//! or one `a <u> <v>` line per arc.

use std::fmt::Write as _;

use crate::digraph::{ArcSet, DiGraph, VertexSet};
use crate::error::{Error, Result};
use crate::oracle::Witness;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Problem {
    Dfvs,
    Dfas,
}

pub fn write_solution(w: &Witness) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{}", w.len());
    match w {
        Witness::Vertices(vs) => {
            for v in vs {
                let _ = writeln!(s, "{v}");
            }
        }
        Witness::Arcs(arcs) => {
            for (u, v) in arcs {
                let _ = writeln!(s, "a {u} {v}");
            }
        }
    }
    s
}

pub fn parse_solution(text: &str, problem: Problem) -> Result<Witness> {
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('%'));
    let (hl, head) = lines.next().ok_or_else(|| Error::parse(0, "missing size line"))?;
    let size: usize =
        head.parse().map_err(|_| Error::parse(hl, format!("size line must be an integer, found {head:?}")))?;
    let num = |ln: usize, t: &str| {
        t.parse::<usize>().map_err(|_| Error::parse(ln, format!("expected an integer, found {t:?}")))
    };
    let mut vs = VertexSet::new();
    let mut arcs = ArcSet::new();
    let mut count = 0;
    for (ln, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        match (problem, toks.as_slice()) {
            (Problem::Dfvs, [v]) => {
                if !vs.insert(num(ln, v)?) {
                    return Err(Error::parse(ln, "vertex listed twice"));
                }
            }
            (Problem::Dfas, ["a", u, v]) => {
                if !arcs.insert((num(ln, u)?, num(ln, v)?)) {
                    return Err(Error::parse(ln, "arc listed twice"));
                }
            }
            _ => return Err(Error::parse(ln, format!("unexpected solution line {l:?}"))),
        }
        count += 1;
    }
    if count != size {
        return Err(Error::parse(hl, format!("declared size {size}, listed {count}")));
    }
    Ok(match problem {
        Problem::Dfvs => Witness::Vertices(vs),
        Problem::Dfas => Witness::Arcs(arcs),
    })
}

/// Checks that every listed element exists in `g` and that deleting them
/// leaves `g` acyclic.
pub fn check_solution(g: &DiGraph, w: &Witness) -> Result<()> {
    match w {
        Witness::Vertices(vs) => {
            if let Some(v) = vs.iter().find(|&&v| !g.contains(v)) {
                return Err(Error::invalid(format!("vertex {v} is not in the graph")));
            }
        }
        Witness::Arcs(arcs) => {
            if let Some((u, v)) = arcs.iter().find(|&&(u, v)| !g.has_arc(u, v)) {
                return Err(Error::invalid(format!("arc ({u},{v}) is not in the graph")));
            }
        }
    }
    if !w.breaks_all_cycles(g) {
        return Err(Error::invalid("the remaining graph still has a cycle"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let w = Witness::Vertices([3, 1].into());
        assert_eq!(write_solution(&w), "2\n1\n3\n");
        assert_eq!(parse_solution(&write_solution(&w), Problem::Dfvs).unwrap(), w);
        let a = Witness::Arcs([(2, 1)].into());
        assert_eq!(write_solution(&a), "1\na 2 1\n");
        assert_eq!(parse_solution(&write_solution(&a), Problem::Dfas).unwrap(), a);
    }

    #[test]
    fn size_mismatch_is_a_parse_error() {
        assert!(matches!(parse_solution("2\n1\n", Problem::Dfvs), Err(Error::Parse { .. })));
    }

    #[test]
    fn triangle_checks() {
        let g = DiGraph::from_arcs(3, [(1, 2), (2, 3), (3, 1)]).unwrap();
        assert!(check_solution(&g, &Witness::Vertices([1].into())).is_ok());
        assert!(check_solution(&g, &Witness::Vertices(VertexSet::new())).is_err());
        assert!(check_solution(&g, &Witness::Vertices([9].into())).is_err());
    }
}
