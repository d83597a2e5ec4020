use std::fmt;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use fvs_core::digraph::parse_graph_file;
use fvs_core::generators::HittingSetInstance;
use fvs_core::{DiGraph, Embedding, Error};

#[derive(Debug)]
pub enum Failure {
    Core(Error),
    Io(PathBuf, std::io::Error),
    Usage(String),
    Rejected(String),
    Disagree(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Core(Error::Parse { .. }) | Failure::Io(..) | Failure::Usage(_) => 1,
            Failure::Core(Error::CapExceeded { .. }) => 2,
            Failure::Core(_) => 3,
            Failure::Rejected(_) => 4,
            Failure::Disagree(_) => 5,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Io(p, e) => write!(f, "{}: {e}", p.display()),
            Failure::Usage(m) | Failure::Rejected(m) | Failure::Disagree(m) => f.write_str(m),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

pub type Outcome<T> = std::result::Result<T, Failure>;

pub fn read(path: &Path) -> Outcome<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

pub fn write(path: &Path, text: &str) -> Outcome<()> {
    std::fs::write(path, text).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

/// Graph plus its embedding when the file has a rotation section.
pub fn load_graph(path: &Path) -> Outcome<(DiGraph, Option<Embedding>)> {
    let file = parse_graph_file(&read(path)?)?;
    let emb = match &file.rotation {
        Some(rot) => Some(Embedding::from_neighbors(&file.graph, rot)?),
        None => None,
    };
    Ok((file.graph, emb))
}

/// `hs <k> <#sets>`, then one line of `r c` pairs per set.
pub fn write_hitting_set(inst: &HittingSetInstance) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "hs {} {}", inst.k, inst.sets.len());
    for set in &inst.sets {
        let cells: Vec<String> = set.iter().map(|(r, c)| format!("{r} {c}")).collect();
        let _ = writeln!(s, "{}", cells.join(" "));
    }
    s
}

#[cfg(test)]
pub fn parse_hitting_set(text: &str) -> Outcome<HittingSetInstance> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let bad = |ln: usize, msg: &str| Failure::Core(Error::Parse { line: ln + 1, msg: msg.to_string() });
    let (hl, head) = lines.next().ok_or_else(|| bad(0, "missing header"))?;
    let h: Vec<&str> = head.split_whitespace().collect();
    let (k, count) = match h.as_slice() {
        ["hs", k, m] => {
            (k.parse().map_err(|_| bad(hl, "bad k"))?, m.parse::<usize>().map_err(|_| bad(hl, "bad set count"))?)
        }
        _ => return Err(bad(hl, "header must be \"hs <k> <#sets>\"")),
    };
    let mut sets = Vec::new();
    for (ln, l) in lines {
        let nums: Vec<usize> = l
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| bad(ln, "expected integers")))
            .collect::<Outcome<_>>()?;
        if !nums.len().is_multiple_of(2) {
            return Err(bad(ln, "cells come in (row, column) pairs"));
        }
        sets.push(nums.chunks(2).map(|p| (p[0], p[1])).collect());
    }
    if sets.len() != count {
        return Err(bad(hl, "set count does not match header"));
    }
    Ok(HittingSetInstance::new(k, sets)?)
}

/// `s t` lines over points `1..=n`.
pub fn parse_relation(text: &str, n: usize) -> Outcome<Vec<(usize, usize)>> {
    let mut pairs = Vec::new();
    for (i, l) in text.lines().enumerate() {
        let l = l.trim();
        if l.is_empty() || l.starts_with('%') {
            continue;
        }
        let bad = |msg: &str| Failure::Core(Error::Parse { line: i + 1, msg: msg.to_string() });
        let nums: Vec<usize> =
            l.split_whitespace().map(|t| t.parse().map_err(|_| bad("expected integers"))).collect::<Outcome<_>>()?;
        match nums.as_slice() {
            &[s, t] if (1..=n).contains(&s) && (1..=n).contains(&t) => pairs.push((s, t)),
            _ => return Err(bad("relation line must be \"s t\" with points in 1..=N")),
        }
    }
    Ok(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hitting_set_round_trip() {
        let inst = fvs_core::generators::gen_hitting_set(3, 4, 9);
        assert_eq!(parse_hitting_set(&write_hitting_set(&inst)).unwrap(), inst);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(Failure::Core(Error::Parse { line: 1, msg: String::new() }).exit_code(), 1);
        assert_eq!(Failure::Core(Error::CapExceeded { what: "x", limit: 1, actual: 2 }).exit_code(), 2);
        assert_eq!(Failure::Core(Error::InvalidDecomposition(String::new())).exit_code(), 3);
        assert_eq!(Failure::Rejected(String::new()).exit_code(), 4);
    }
}
