//! Text and JSON file formats for every domain type.
//!
//! | type | format |
//! |------|--------|
//! | set cover instance | JSON: `sets`, `universe`, `incidence` (ids), `partition` (`[start, end)` pairs) |
//! | gap-gadget | text: `gadget k n m ell h`, then `m` rows of `n` entries |
//! | CNF formula | DIMACS CNF |
//! | multipartite graph | text: `k <k>`, then `part <v>...` and `edge <u> <v>` lines |
//! | vector-sum instance | JSON |
//! | integer lists | text: one whitespace-separated list per line |
//! | universal set | text: `universal n k count`, then one bit string per line |
//!
//! `#` starts a comment in every text format except DIMACS, which uses `c`
//! lines.

use std::collections::HashMap;
use std::fmt::Write as _;

use gapcover_core::model::Violation;
use gapcover_core::{
    CnfFormula, GapGadget, MultipartiteGraph, SetCoverInstance, UniversalSet, VectorSumInstance,
};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("invalid content: {0}")]
    Invalid(String),
}

fn at(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse {
        line,
        message: message.into(),
    }
}

/// Non-empty lines with comments stripped, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn parse_num<T: std::str::FromStr>(line: usize, token: &str, what: &str) -> Result<T, FormatError> {
    token
        .parse()
        .map_err(|_| at(line, format!("{what}: cannot parse {token:?}")))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    sets: Vec<String>,
    universe: Vec<String>,
    incidence: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    partition: Option<Vec<[usize; 2]>>,
}

pub fn write_instance(inst: &SetCoverInstance) -> String {
    let file = InstanceFile {
        sets: inst.set_ids.clone(),
        universe: inst.universe_ids.clone(),
        incidence: inst
            .incidence
            .iter()
            .map(|row| row.iter().map(|&u| inst.universe_ids[u].clone()).collect())
            .collect(),
        partition: inst
            .partition
            .as_ref()
            .map(|p| p.iter().map(|r| [r.start, r.end]).collect()),
    };
    let mut out = serde_json::to_string_pretty(&file).expect("instance serializes");
    out.push('\n');
    out
}

/// Parse and validate an instance. Unequal part widths are accepted (they
/// are what padding fixes); every other violation is an error.
pub fn read_instance(text: &str) -> Result<SetCoverInstance, FormatError> {
    let file: InstanceFile = serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()))?;
    let index: HashMap<&str, usize> = file
        .universe
        .iter()
        .enumerate()
        .map(|(i, u)| (u.as_str(), i))
        .collect();
    let mut incidence = Vec::with_capacity(file.incidence.len());
    for (s, row) in file.incidence.iter().enumerate() {
        let mut r = Vec::with_capacity(row.len());
        for (pos, id) in row.iter().enumerate() {
            let u = index.get(id.as_str()).ok_or_else(|| {
                FormatError::Invalid(format!("incidence[{s}][{pos}]: unknown universe id {id:?}"))
            })?;
            r.push(*u);
        }
        incidence.push(r);
    }
    let mut inst = SetCoverInstance::new(file.sets, file.universe, incidence);
    if let Some(p) = file.partition {
        inst = inst.with_partition(p.into_iter().map(|[a, b]| a..b).collect());
    }
    if let Some(v) = inst
        .validate()
        .violations
        .into_iter()
        .find(|v| !matches!(v, Violation::UnequalPartWidths { .. }))
    {
        return Err(FormatError::Invalid(v.to_string()));
    }
    Ok(inst)
}

pub fn write_gadget(g: &GapGadget) -> String {
    let mut out = format!("gadget {} {} {} {} {}\n", g.k, g.n, g.m, g.ell, g.h);
    for row in &g.matrix {
        let cells: Vec<String> = row.iter().map(u32::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

/// Parse a gadget. Entries outside `[h]` are kept so that the verifiers
/// can report them; shape errors are rejected here.
pub fn read_gadget(text: &str) -> Result<GapGadget, FormatError> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| at(1, "missing gadget header"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 6 || fields[0] != "gadget" {
        return Err(at(hl, "expected `gadget k n m ell h`"));
    }
    let nums: Vec<usize> = fields[1..]
        .iter()
        .zip(["k", "n", "m", "ell", "h"])
        .map(|(t, what)| parse_num(hl, t, what))
        .collect::<Result<_, _>>()?;
    let (k, n, m, ell, h) = (nums[0], nums[1], nums[2], nums[3], nums[4]);
    if [k, n, m, h].contains(&0) {
        return Err(at(hl, "k, n, m and h must all be at least 1"));
    }
    let mut matrix = Vec::with_capacity(m);
    let mut last = hl;
    for (line, l) in lines {
        last = line;
        if matrix.len() == m {
            return Err(at(line, format!("more than m = {m} rows")));
        }
        let row: Vec<u32> = l
            .split_whitespace()
            .map(|t| parse_num(line, t, "entry"))
            .collect::<Result<_, _>>()?;
        if row.len() != n {
            return Err(at(line, format!("{} entries, expected n = {n}", row.len())));
        }
        matrix.push(row);
    }
    if matrix.len() != m {
        return Err(at(last + 1, format!("file ends after {} of m = {m} rows", matrix.len())));
    }
    let checked = GapGadget::new(k, n, h, vec![vec![1; n]])
        .map_err(|e| FormatError::Invalid(e.to_string()))?;
    if checked.ell != ell {
        return Err(at(hl, format!("ell = {ell} but h^k = {}", checked.ell)));
    }
    Ok(GapGadget {
        k,
        n,
        m,
        ell,
        h,
        matrix,
    })
}

pub fn write_cnf(phi: &CnfFormula) -> String {
    let mut out = format!("p cnf {} {}\n", phi.num_vars, phi.clauses.len());
    for c in &phi.clauses {
        for l in c {
            write!(out, "{l} ").expect("string write");
        }
        out.push_str("0\n");
    }
    out
}

/// DIMACS CNF: `c` comment lines, one `p cnf <vars> <clauses>` header, then
/// 0-terminated clauses that may span lines. A `%` line ends the input.
pub fn read_cnf(text: &str) -> Result<CnfFormula, FormatError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<i64> = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('c') {
            continue;
        }
        if l.starts_with('%') {
            break;
        }
        if l.starts_with('p') {
            if header.is_some() {
                return Err(at(line, "second problem line"));
            }
            let f: Vec<&str> = l.split_whitespace().collect();
            if f.len() != 4 || f[0] != "p" || f[1] != "cnf" {
                return Err(at(line, "expected `p cnf <vars> <clauses>`"));
            }
            header = Some((
                parse_num(line, f[2], "variable count")?,
                parse_num(line, f[3], "clause count")?,
                line,
            ));
            continue;
        }
        let Some((vars, _, _)) = header else {
            return Err(at(line, "clause before the problem line"));
        };
        for t in l.split_whitespace() {
            let lit: i64 = parse_num(line, t, "literal")?;
            if lit == 0 {
                if current.is_empty() {
                    return Err(at(line, "empty clause"));
                }
                clauses.push(std::mem::take(&mut current));
            } else if lit.unsigned_abs() as usize > vars {
                return Err(at(line, format!("literal {lit} exceeds {vars} variables")));
            } else {
                current.push(lit);
            }
        }
    }
    let (vars, count, hl) = header.ok_or_else(|| at(last_line.max(1), "missing problem line"))?;
    if !current.is_empty() {
        return Err(at(last_line, "unterminated clause at end of input"));
    }
    if clauses.len() != count {
        return Err(at(
            last_line.max(hl),
            format!("header declares {count} clauses, found {}", clauses.len()),
        ));
    }
    CnfFormula::new(vars, clauses).map_err(|e| FormatError::Invalid(e.to_string()))
}

pub fn write_graph(g: &MultipartiteGraph) -> String {
    let mut out = format!("k {}\n", g.k());
    for part in &g.parts {
        out.push_str("part");
        for v in part {
            write!(out, " {v}").expect("string write");
        }
        out.push('\n');
    }
    for (a, b) in &g.edges {
        writeln!(out, "edge {a} {b}").expect("string write");
    }
    out
}

/// `k <k>` first, then exactly `k` `part` lines (vertex lists), then `edge`
/// lines. Vertices must be `0..n` where `n` is the number listed in parts.
pub fn read_graph(text: &str) -> Result<MultipartiteGraph, FormatError> {
    let mut k = None;
    let mut parts: Vec<Vec<usize>> = Vec::new();
    let mut edges = Vec::new();
    for (line, l) in content_lines(text) {
        let mut f = l.split_whitespace();
        match f.next() {
            Some("k") => {
                if k.is_some() {
                    return Err(at(line, "second `k` line"));
                }
                let t = f.next().ok_or_else(|| at(line, "missing part count"))?;
                k = Some(parse_num::<usize>(line, t, "part count")?);
                if f.next().is_some() {
                    return Err(at(line, "trailing tokens"));
                }
            }
            Some("part") => {
                if k.is_none() {
                    return Err(at(line, "`part` before `k`"));
                }
                if !edges.is_empty() {
                    return Err(at(line, "`part` after `edge`"));
                }
                parts.push(f.map(|t| parse_num(line, t, "vertex")).collect::<Result<_, _>>()?);
            }
            Some("edge") => {
                if k.is_none() {
                    return Err(at(line, "`edge` before `k`"));
                }
                let ends: Vec<usize> = f.map(|t| parse_num(line, t, "vertex")).collect::<Result<_, _>>()?;
                if ends.len() != 2 {
                    return Err(at(line, "an edge has two endpoints"));
                }
                edges.push((ends[0], ends[1]));
            }
            Some(other) => return Err(at(line, format!("unknown keyword {other:?}"))),
            None => {}
        }
    }
    let k = k.ok_or_else(|| at(1, "missing `k` line"))?;
    if parts.len() != k {
        return Err(FormatError::Invalid(format!("k = {k} but {} part lines", parts.len())));
    }
    let n = parts.iter().map(Vec::len).sum();
    MultipartiteGraph::new(n, parts, edges).map_err(|e| FormatError::Invalid(e.to_string()))
}

pub fn write_vectorsum(vs: &VectorSumInstance) -> String {
    let mut out = serde_json::to_string_pretty(vs).expect("vector-sum serializes");
    out.push('\n');
    out
}

pub fn read_vectorsum(text: &str) -> Result<VectorSumInstance, FormatError> {
    let vs: VectorSumInstance = serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()))?;
    vs.validate().map_err(|e| FormatError::Invalid(e.to_string()))?;
    Ok(vs)
}

pub fn write_lists(lists: &[Vec<i64>]) -> String {
    let mut out = String::new();
    for l in lists {
        let cells: Vec<String> = l.iter().map(i64::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

/// One list per non-empty line.
pub fn read_lists(text: &str) -> Result<Vec<Vec<i64>>, FormatError> {
    let lists: Vec<Vec<i64>> = content_lines(text)
        .map(|(line, l)| {
            l.split_whitespace()
                .map(|t| parse_num(line, t, "integer"))
                .collect::<Result<_, _>>()
        })
        .collect::<Result<_, _>>()?;
    if lists.is_empty() {
        return Err(at(1, "no lists"));
    }
    Ok(lists)
}

pub fn write_universal(us: &UniversalSet) -> String {
    let mut out = format!("universal {} {} {}\n", us.n, us.k, us.len());
    for s in us.to_bitstrings() {
        out.push_str(&s);
        out.push('\n');
    }
    out
}

pub fn read_universal(text: &str) -> Result<UniversalSet, FormatError> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| at(1, "missing header"))?;
    let f: Vec<&str> = header.split_whitespace().collect();
    if f.len() != 4 || f[0] != "universal" {
        return Err(at(hl, "expected `universal n k count`"));
    }
    let n: usize = parse_num(hl, f[1], "n")?;
    let k: usize = parse_num(hl, f[2], "k")?;
    let count: usize = parse_num(hl, f[3], "count")?;
    let mut rows = Vec::with_capacity(count);
    let mut last = hl;
    for (line, l) in lines {
        last = line;
        if l.len() != n || !l.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(at(line, format!("expected a bit string of length {n}")));
        }
        rows.push(l);
    }
    if rows.len() != count {
        return Err(at(last + 1, format!("header declares {count} strings, found {}", rows.len())));
    }
    UniversalSet::from_bitstrings(n, k, &rows).map_err(|e| FormatError::Invalid(e.to_string()))
}
