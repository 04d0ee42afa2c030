//! Domain types shared by every construction: set cover instances, CNF
//! formulas, multipartite graphs and vector-sum instances.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use crate::bits::BitSet;
use crate::error::{Error, Result};

/// A set cover instance viewed as a bipartite incidence structure between
/// the sets `S` and the universe `U`.
///
/// `incidence[s]` lists, in ascending order, the positions in
/// `universe_ids` of the elements covered by set `s`. The optional
/// partition splits `set_ids` into contiguous index ranges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetCoverInstance {
    pub set_ids: Vec<String>,
    pub universe_ids: Vec<String>,
    pub incidence: Vec<Vec<usize>>,
    pub partition: Option<Vec<Range<usize>>>,
}

/// One broken invariant of a [`SetCoverInstance`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    IncidenceLength { sets: usize, rows: usize },
    UnknownUniverseId { set: usize, position: usize },
    UnsortedIncidence { set: usize, position: usize },
    DuplicateSetId { index: usize },
    DuplicateUniverseId { index: usize },
    PartitionGap { part: usize },
    PartitionIncomplete { covered: usize, sets: usize },
    UnequalPartWidths { part: usize, width: usize, expected: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::IncidenceLength { sets, rows } => {
                write!(f, "incidence: {rows} rows for {sets} sets")
            }
            Violation::UnknownUniverseId { set, position } => {
                write!(f, "incidence[{set}][{position}]: unknown universe id")
            }
            Violation::UnsortedIncidence { set, position } => {
                write!(f, "incidence[{set}][{position}]: not strictly ascending")
            }
            Violation::DuplicateSetId { index } => write!(f, "set_ids[{index}]: duplicate id"),
            Violation::DuplicateUniverseId { index } => {
                write!(f, "universe_ids[{index}]: duplicate id")
            }
            Violation::PartitionGap { part } => {
                write!(f, "partition[{part}]: gap or overlap with the previous part")
            }
            Violation::PartitionIncomplete { covered, sets } => {
                write!(f, "partition: covers {covered} of {sets} sets")
            }
            Violation::UnequalPartWidths {
                part,
                width,
                expected,
            } => write!(
                f,
                "partition[{part}]: unequal part widths ({width} vs {expected})"
            ),
        }
    }
}

/// Outcome of [`SetCoverInstance::validate`]; violations are data.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl SetCoverInstance {
    /// An instance without a partition.
    pub fn new(set_ids: Vec<String>, universe_ids: Vec<String>, incidence: Vec<Vec<usize>>) -> Self {
        SetCoverInstance {
            set_ids,
            universe_ids,
            incidence,
            partition: None,
        }
    }

    pub fn with_partition(mut self, parts: Vec<Range<usize>>) -> Self {
        self.partition = Some(parts);
        self
    }

    /// Partition from consecutive part sizes.
    pub fn with_part_sizes(self, sizes: &[usize]) -> Self {
        let mut start = 0;
        let parts = sizes
            .iter()
            .map(|&w| {
                let r = start..start + w;
                start += w;
                r
            })
            .collect();
        self.with_partition(parts)
    }

    pub fn num_sets(&self) -> usize {
        self.set_ids.len()
    }

    pub fn universe_size(&self) -> usize {
        self.universe_ids.len()
    }

    pub fn num_parts(&self) -> Option<usize> {
        self.partition.as_ref().map(Vec::len)
    }

    /// Common width of the parts, when the partition is present and equal.
    pub fn part_width(&self) -> Option<usize> {
        let parts = self.partition.as_ref()?;
        let w = parts.first().map_or(0, |r| r.len());
        parts.iter().all(|r| r.len() == w).then_some(w)
    }

    /// `(part, offset within part)` of a set.
    pub fn part_of(&self, set: usize) -> Option<(usize, usize)> {
        let parts = self.partition.as_ref()?;
        parts
            .iter()
            .position(|r| r.contains(&set))
            .map(|p| (p, set - parts[p].start))
    }

    /// Check every invariant and report each violation by field and index.
    pub fn validate(&self) -> ValidationReport {
        let mut v = Vec::new();
        let (sets, elems) = (self.set_ids.len(), self.universe_ids.len());
        if self.incidence.len() != sets {
            v.push(Violation::IncidenceLength {
                sets,
                rows: self.incidence.len(),
            });
        }
        for (s, row) in self.incidence.iter().enumerate() {
            for (pos, &u) in row.iter().enumerate() {
                if u >= elems {
                    v.push(Violation::UnknownUniverseId { set: s, position: pos });
                }
                if pos > 0 && row[pos - 1] >= u {
                    v.push(Violation::UnsortedIncidence { set: s, position: pos });
                }
            }
        }
        let mut seen = BTreeSet::new();
        for (i, id) in self.set_ids.iter().enumerate() {
            if !seen.insert(id.as_str()) {
                v.push(Violation::DuplicateSetId { index: i });
            }
        }
        let mut seen = BTreeSet::new();
        for (i, id) in self.universe_ids.iter().enumerate() {
            if !seen.insert(id.as_str()) {
                v.push(Violation::DuplicateUniverseId { index: i });
            }
        }
        if let Some(parts) = &self.partition {
            let mut next = 0;
            for (p, r) in parts.iter().enumerate() {
                if r.start != next || r.end < r.start {
                    v.push(Violation::PartitionGap { part: p });
                }
                next = r.end.max(r.start);
            }
            if next != sets {
                v.push(Violation::PartitionIncomplete {
                    covered: next,
                    sets,
                });
            }
            if let Some(first) = parts.first() {
                let expected = first.len();
                for (p, r) in parts.iter().enumerate().skip(1) {
                    if r.len() != expected {
                        v.push(Violation::UnequalPartWidths {
                            part: p,
                            width: r.len(),
                            expected,
                        });
                    }
                }
            }
        }
        ValidationReport { violations: v }
    }

    /// Per-set coverage as bit vectors over the universe.
    pub fn set_masks(&self) -> Vec<BitSet> {
        let n = self.universe_size();
        self.incidence
            .iter()
            .map(|row| {
                let mut b = BitSet::new(n);
                for &u in row {
                    b.insert(u);
                }
                b
            })
            .collect()
    }

    /// Whether the chosen sets cover every universe element.
    pub fn covers(&self, chosen: &[usize]) -> bool {
        let mut hit = BitSet::new(self.universe_size());
        for &s in chosen {
            for &u in &self.incidence[s] {
                hit.insert(u);
            }
        }
        hit.is_full()
    }

    /// First universe element not covered by the chosen sets.
    pub fn first_uncovered(&self, chosen: &[usize]) -> Option<usize> {
        let mut hit = BitSet::new(self.universe_size());
        for &s in chosen {
            for &u in &self.incidence[s] {
                hit.insert(u);
            }
        }
        hit.first_zero()
    }

    /// Whether `chosen` has exactly one set in every part.
    pub fn is_rainbow(&self, chosen: &[usize]) -> bool {
        let Some(parts) = &self.partition else {
            return false;
        };
        chosen.len() == parts.len()
            && parts
                .iter()
                .all(|r| chosen.iter().filter(|s| r.contains(s)).count() == 1)
    }

    pub fn set_index(&self, id: &str) -> Option<usize> {
        self.set_ids.iter().position(|s| s == id)
    }
}

/// Pad every part to the largest part width with dummy sets named
/// `pad:<part>:<index>` that cover nothing.
///
/// The result lists sets part by part; an already-equal partition is
/// returned unchanged.
pub fn pad_partition(inst: &SetCoverInstance, k: usize) -> Result<SetCoverInstance> {
    let parts = inst.partition.as_ref().ok_or(Error::NoPartition)?;
    if parts.len() != k {
        return Err(Error::DimensionMismatch(format!(
            "expected {k} parts, instance has {}",
            parts.len()
        )));
    }
    let structural = inst.validate().violations.into_iter().any(|v| {
        !matches!(v, Violation::UnequalPartWidths { .. })
    });
    if structural {
        return Err(Error::InvalidInstance(
            "partition or incidence is malformed".into(),
        ));
    }
    let width = parts.iter().map(|r| r.len()).max().unwrap_or(0);
    if parts.iter().all(|r| r.len() == width) {
        return Ok(inst.clone());
    }
    let existing: BTreeSet<&str> = inst.set_ids.iter().map(String::as_str).collect();
    let mut set_ids = Vec::with_capacity(width * k);
    let mut incidence = Vec::with_capacity(width * k);
    let mut ranges = Vec::with_capacity(k);
    for (p, r) in parts.iter().enumerate() {
        let start = set_ids.len();
        for s in r.clone() {
            set_ids.push(inst.set_ids[s].clone());
            incidence.push(inst.incidence[s].clone());
        }
        for i in 0..width - r.len() {
            let id = format!("pad:{p}:{i}");
            if existing.contains(id.as_str()) {
                return Err(Error::InvalidInstance(format!(
                    "padding id {id} already in use"
                )));
            }
            set_ids.push(id);
            incidence.push(Vec::new());
        }
        ranges.push(start..set_ids.len());
    }
    Ok(SetCoverInstance {
        set_ids,
        universe_ids: inst.universe_ids.clone(),
        incidence,
        partition: Some(ranges),
    })
}

/// A CNF formula over variables `1..=num_vars`; literals are signed
/// variable indices.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CnfFormula {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i64>>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Vec<i64>>) -> Result<Self> {
        let f = CnfFormula { num_vars, clauses };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        for (c, clause) in self.clauses.iter().enumerate() {
            if clause.is_empty() {
                return Err(Error::InvalidInstance(format!("clause {c} is empty")));
            }
            for &lit in clause {
                if lit == 0 || lit.unsigned_abs() as usize > self.num_vars {
                    return Err(Error::InvalidInstance(format!(
                        "clause {c}: literal {lit} outside 1..={}",
                        self.num_vars
                    )));
                }
            }
        }
        Ok(())
    }

    /// Whether a literal is made true by `assignment[var - 1]`.
    pub fn literal_true(lit: i64, assignment: &[bool]) -> bool {
        let value = assignment[lit.unsigned_abs() as usize - 1];
        if lit > 0 {
            value
        } else {
            !value
        }
    }

    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|&l| Self::literal_true(l, assignment)))
    }
}

/// A graph whose vertices `0..num_vertices` are split into `k` parts, each
/// an independent set.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MultipartiteGraph {
    pub num_vertices: usize,
    pub parts: Vec<Vec<usize>>,
    pub edges: Vec<(usize, usize)>,
}

impl MultipartiteGraph {
    pub fn new(num_vertices: usize, parts: Vec<Vec<usize>>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let g = MultipartiteGraph {
            num_vertices,
            parts,
            edges,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn k(&self) -> usize {
        self.parts.len()
    }

    /// Part index of every vertex.
    pub fn part_map(&self) -> Vec<Option<usize>> {
        let mut map = vec![None; self.num_vertices];
        for (p, vs) in self.parts.iter().enumerate() {
            for &v in vs {
                if v < self.num_vertices {
                    map[v] = Some(p);
                }
            }
        }
        map
    }

    pub fn validate(&self) -> Result<()> {
        let mut owner = vec![None; self.num_vertices];
        for (p, vs) in self.parts.iter().enumerate() {
            for &v in vs {
                if v >= self.num_vertices {
                    return Err(Error::InvalidInstance(format!(
                        "part {p}: vertex {v} out of range"
                    )));
                }
                if owner[v].replace(p).is_some() {
                    return Err(Error::InvalidInstance(format!(
                        "vertex {v} listed in more than one part"
                    )));
                }
            }
        }
        if let Some(v) = owner.iter().position(Option::is_none) {
            return Err(Error::InvalidInstance(format!("vertex {v} is in no part")));
        }
        let mut seen = BTreeSet::new();
        for &(a, b) in &self.edges {
            if a >= self.num_vertices || b >= self.num_vertices {
                return Err(Error::InvalidInstance(format!("edge ({a},{b}) out of range")));
            }
            if owner[a] == owner[b] {
                return Err(Error::InvalidInstance(format!(
                    "edge ({a},{b}) joins two vertices of part {}",
                    owner[a].unwrap_or(0)
                )));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(Error::InvalidInstance(format!("edge ({a},{b}) repeated")));
            }
        }
        Ok(())
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges
            .iter()
            .any(|&(x, y)| (x == a && y == b) || (x == b && y == a))
    }
}

/// `k` lists of integer vectors of length `dim` with entries in
/// `[-bound, bound]`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct VectorSumInstance {
    pub k: usize,
    pub dim: usize,
    pub bound: i64,
    pub lists: Vec<Vec<Vec<i64>>>,
}

impl VectorSumInstance {
    pub fn validate(&self) -> Result<()> {
        if self.lists.len() != self.k {
            return Err(Error::InvalidInstance(format!(
                "{} lists for k = {}",
                self.lists.len(),
                self.k
            )));
        }
        if self.bound < 0 {
            return Err(Error::InvalidInstance("negative bound".into()));
        }
        for (i, list) in self.lists.iter().enumerate() {
            for (j, v) in list.iter().enumerate() {
                if v.len() != self.dim {
                    return Err(Error::InvalidInstance(format!(
                        "lists[{i}][{j}] has length {}, expected {}",
                        v.len(),
                        self.dim
                    )));
                }
                if v.iter().any(|x| x.abs() > self.bound) {
                    return Err(Error::InvalidInstance(format!(
                        "lists[{i}][{j}] has an entry outside ±{}",
                        self.bound
                    )));
                }
            }
        }
        Ok(())
    }
}
