//! The hypercube reduction: a partitioned instance `(S, U)` with `k` parts
//! of width `n` and a gadget with matching `k` and `n` give an instance
//! with the same sets over `U' = ⋃ᵢ U^{Aᵢ}`.
//!
//! A set `s` (part `j`, index `b`) covers `f: Aᵢ → U` iff some `a ∈ Aᵢ`
//! is adjacent to `b ∈ B_j` and `s` covers `f(a)`. Equivalently, `X`
//! covers `U'` iff every group has a vertex `a` whose neighbourhood in `X`
//! covers `U`; [`HypercubeView`] works with that form and never
//! materializes `U'`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::bits::{for_each_tuple, BitSet};
use crate::budget::{checked_pow, DEFAULT_SIZE_BUDGET};
use crate::error::{Error, Result};
use crate::gadget::{AVertex, GapGadget};
use crate::model::SetCoverInstance;

/// A universe element of the reduced instance: group `i` and a map from
/// the `ℓ` vertices of `Aᵢ` (canonical order) to source universe ids.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct HypercubeElement {
    pub group: usize,
    pub assignment: Vec<String>,
}

fn escape_into(out: &mut String, id: &str) {
    for c in id.chars() {
        if matches!(c, '\\' | ',' | '(' | ')') {
            out.push('\\');
        }
        out.push(c);
    }
}

/// `hc:<group>:(<id>,<id>,...)`, with `\`, `,`, `(` and `)` inside ids
/// escaped by a backslash.
pub fn encode_element<S: AsRef<str>>(group: usize, assignment: &[S]) -> String {
    let mut out = format!("hc:{group}:(");
    for (x, id) in assignment.iter().enumerate() {
        if x > 0 {
            out.push(',');
        }
        escape_into(&mut out, id.as_ref());
    }
    out.push(')');
    out
}

pub fn decode_element(id: &str) -> Result<HypercubeElement> {
    let bad = |reason| Error::MalformedId {
        id: id.to_string(),
        reason,
    };
    let rest = id.strip_prefix("hc:").ok_or_else(|| bad("missing hc: prefix"))?;
    let (group, body) = rest.split_once(':').ok_or_else(|| bad("missing group separator"))?;
    if group.is_empty() || !group.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad("group is not a decimal integer"));
    }
    if group.len() > 1 && group.starts_with('0') {
        return Err(bad("group has a leading zero"));
    }
    let group: usize = group.parse().map_err(|_| bad("group out of range"))?;
    let body = body.strip_prefix('(').ok_or_else(|| bad("missing opening parenthesis"))?;
    let mut assignment = Vec::new();
    let mut current = String::new();
    let mut chars = body.chars();
    let mut closed = false;
    while let Some(c) = chars.next() {
        match c {
            '\\' => match chars.next() {
                Some(e @ ('\\' | ',' | '(' | ')')) => current.push(e),
                _ => return Err(bad("invalid escape")),
            },
            ',' => assignment.push(core::mem::take(&mut current)),
            ')' => {
                assignment.push(core::mem::take(&mut current));
                closed = true;
                break;
            }
            '(' => return Err(bad("unescaped parenthesis")),
            c => current.push(c),
        }
    }
    if !closed {
        return Err(bad("missing closing parenthesis"));
    }
    if chars.next().is_some() {
        return Err(bad("trailing characters"));
    }
    Ok(HypercubeElement { group, assignment })
}

/// `m·|U|^ℓ`, if it fits in a `u128`.
pub fn reduced_universe_size(m: usize, universe: usize, ell: usize) -> Option<u128> {
    checked_pow(universe as u128, ell as u64).and_then(|p| p.checked_mul(m as u128))
}

/// Per-group coverage structure extracted from a cover of `U'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupWitness {
    /// The first vertex whose neighbourhood in `X` covers `U` has at least
    /// `k + 1` neighbours in `X`.
    Heavy { a: AVertex, neighbours: Vec<usize> },
    /// The first vertex whose neighbourhood in `X` covers `U` has at most
    /// `k` neighbours there; they form a cover of the source instance.
    SubCover {
        a: AVertex,
        sets: Vec<usize>,
        rainbow: bool,
    },
}

/// The reduced instance as an implicit coverage model.
#[derive(Debug, Clone)]
pub struct HypercubeView<'a> {
    src: &'a SetCoverInstance,
    gadget: &'a GapGadget,
    masks: Vec<BitSet>,
    /// `(part, index)` of every set.
    place: Vec<(usize, usize)>,
    labels: Vec<Vec<u32>>,
}

impl<'a> HypercubeView<'a> {
    pub fn new(src: &'a SetCoverInstance, gadget: &'a GapGadget) -> Result<Self> {
        let report = src.validate();
        if let Some(v) = report.violations.first() {
            return Err(Error::InvalidInstance(v.to_string()));
        }
        let parts = src.num_parts().ok_or(Error::NoPartition)?;
        if parts != gadget.k {
            return Err(Error::DimensionMismatch(format!(
                "instance has {parts} parts, gadget has k = {}",
                gadget.k
            )));
        }
        let width = src.part_width().unwrap_or(0);
        if width != gadget.n {
            return Err(Error::DimensionMismatch(format!(
                "part width {width} differs from gadget n = {}",
                gadget.n
            )));
        }
        if let Some(v) = gadget.check_m1() {
            return Err(Error::InvalidInstance(format!(
                "gadget entry ({}, {}) = {} outside [1, {}]",
                v.row, v.col, v.value, gadget.h
            )));
        }
        let place = (0..src.num_sets())
            .map(|s| src.part_of(s).expect("validated partition"))
            .collect();
        Ok(HypercubeView {
            src,
            gadget,
            masks: src.set_masks(),
            place,
            labels: gadget.label_table(),
        })
    }

    pub fn source(&self) -> &SetCoverInstance {
        self.src
    }

    pub fn gadget(&self) -> &GapGadget {
        self.gadget
    }

    pub fn num_sets(&self) -> usize {
        self.src.num_sets()
    }

    pub fn universe_size(&self) -> Option<u128> {
        reduced_universe_size(self.gadget.m, self.src.universe_size(), self.gadget.ell)
    }

    #[inline]
    fn adjacent(&self, group: usize, a: usize, s: usize) -> bool {
        let (part, index) = self.place[s];
        self.gadget.adjacent_labels(group, &self.labels[a], part, index)
    }

    /// Sets of `x` adjacent to vertex `a` of `group`, in the order of `x`.
    pub fn neighbours_in(&self, group: usize, a: usize, x: &[usize]) -> Vec<usize> {
        x.iter().copied().filter(|&s| self.adjacent(group, a, s)).collect()
    }

    fn union(&self, sets: &[usize]) -> BitSet {
        let mut hit = BitSet::new(self.src.universe_size());
        for &s in sets {
            hit.union_with(&self.masks[s]);
        }
        hit
    }

    /// First vertex of `group` whose neighbourhood in `x` covers `U`.
    fn covering_vertex(&self, group: usize, x: &[usize]) -> Option<usize> {
        (0..self.gadget.ell).find(|&a| self.union(&self.neighbours_in(group, a, x)).is_full())
    }

    pub fn covers(&self, x: &[usize]) -> bool {
        (0..self.gadget.m).all(|group| self.covering_vertex(group, x).is_some())
    }

    /// An element of `U'` missed by `x`, as `(group, source indices)`: in the
    /// first group without a covering vertex, every `a` is sent to the
    /// first element of `U` its neighbourhood in `x` misses.
    pub fn uncovered(&self, x: &[usize]) -> Option<(usize, Vec<usize>)> {
        (0..self.gadget.m).find_map(|group| {
            let f: Option<Vec<usize>> = (0..self.gadget.ell)
                .map(|a| self.union(&self.neighbours_in(group, a, x)).first_zero())
                .collect();
            f.map(|f| (group, f))
        })
    }

    pub fn element_id(&self, group: usize, f: &[usize]) -> String {
        let ids: Vec<&str> = f.iter().map(|&u| self.src.universe_ids[u].as_str()).collect();
        encode_element(group, &ids)
    }

    /// For every group, the coverage structure `x` has there. Fails with an
    /// uncovered element when `x` does not cover `U'`.
    pub fn covering_witness(&self, x: &[usize]) -> Result<Vec<GroupWitness>> {
        for &s in x {
            if s >= self.num_sets() {
                return Err(Error::OutOfRange(format!("set index {s}")));
            }
        }
        if let Some((group, f)) = self.uncovered(x) {
            return Err(Error::NotCovered {
                id: self.element_id(group, &f),
            });
        }
        let k = self.gadget.k;
        Ok((0..self.gadget.m)
            .map(|group| {
                let a = self.covering_vertex(group, x).expect("x covers U'");
                let sets = self.neighbours_in(group, a, x);
                let vertex = self.gadget.avertex(group, a);
                if sets.len() > k {
                    GroupWitness::Heavy {
                        a: vertex,
                        neighbours: sets,
                    }
                } else {
                    let rainbow = self.src.is_rainbow(&sets);
                    GroupWitness::SubCover {
                        a: vertex,
                        sets,
                        rainbow,
                    }
                }
            })
            .collect())
    }

    /// Whether set `s` covers the element `(group, f)`.
    pub fn set_covers(&self, s: usize, group: usize, f: &[usize]) -> bool {
        f.iter()
            .enumerate()
            .any(|(a, &u)| self.adjacent(group, a, s) && self.masks[s].contains(u))
    }
}

/// The materialized reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduced {
    pub instance: SetCoverInstance,
    pub warnings: Vec<String>,
}

/// Materialize the reduced instance. Sets keep their ids, order and
/// partition; universe elements are listed group by group, assignments in
/// lexicographic order of source indices.
///
/// `rainbow_certified` states that the caller knows yes-instances of the
/// source have a one-set-per-part cover; without it only `opt ≤ k` through
/// such covers is guaranteed, and a warning is attached.
pub fn apply_reduction(
    src: &SetCoverInstance,
    gadget: &GapGadget,
    size_budget: u64,
    rainbow_certified: bool,
) -> Result<Reduced> {
    let view = HypercubeView::new(src, gadget)?;
    let (m, ell, u) = (gadget.m, gadget.ell, src.universe_size());
    let size = view.universe_size();
    match size {
        Some(s) if s <= size_budget as u128 => {}
        _ => {
            return Err(Error::SizeExceeded {
                what: "reduced universe m·|U|^ℓ",
                size: match size {
                    Some(s) => format!("{m}·{u}^{ell} = {s}"),
                    None => format!("{m}·{u}^{ell} (overflows u128)"),
                },
                budget: size_budget,
            })
        }
    }
    let total = size.unwrap_or(0) as usize;
    // adjacency lists per (group, vertex)
    let adj: Vec<Vec<Vec<usize>>> = (0..m)
        .map(|g| {
            (0..ell)
                .map(|a| (0..src.num_sets()).filter(|&s| view.adjacent(g, a, s)).collect())
                .collect()
        })
        .collect();
    let mut universe_ids = Vec::with_capacity(total);
    let mut incidence: Vec<Vec<usize>> = vec![Vec::new(); src.num_sets()];
    let mut stamp = vec![usize::MAX; src.num_sets()];
    for (group, group_adj) in adj.iter().enumerate() {
        for_each_tuple(u, ell, |f| {
            let e = universe_ids.len();
            universe_ids.push(view.element_id(group, f));
            for (a, &x) in f.iter().enumerate() {
                for &s in &group_adj[a] {
                    if stamp[s] != e && view.masks[s].contains(x) {
                        stamp[s] = e;
                        incidence[s].push(e);
                    }
                }
            }
            true
        });
    }
    let mut warnings = Vec::new();
    if !rainbow_certified {
        warnings.push(
            "source is not certified to have rainbow covers: opt(src) ≤ k without a \
             one-set-per-part cover carries no guarantee"
                .to_string(),
        );
    }
    Ok(Reduced {
        instance: SetCoverInstance {
            set_ids: src.set_ids.clone(),
            universe_ids,
            incidence,
            partition: src.partition.clone(),
        },
        warnings,
    })
}

/// [`apply_reduction`] with the default size budget.
pub fn apply_reduction_default(src: &SetCoverInstance, gadget: &GapGadget) -> Result<Reduced> {
    apply_reduction(src, gadget, DEFAULT_SIZE_BUDGET, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadget::{build_gadget, GadgetOptions};

    #[test]
    fn encoding_format() {
        assert_eq!(encode_element(1, &["u1", "u1"]), "hc:1:(u1,u1)");
        assert_eq!(encode_element(0, &["a,b", "c)"]), "hc:0:(a\\,b,c\\))");
        let e = decode_element("hc:0:(a\\,b,c\\))").unwrap();
        assert_eq!(e.assignment, vec!["a,b".to_string(), "c)".to_string()]);
    }

    #[test]
    fn malformed_ids_are_rejected() {
        for id in ["hc:1:(u1", "x:1:(u)", "hc::(u)", "hc:1:u", "hc:1:(u)x", "hc:1:(a\\b)", "hc:01:(u)"] {
            assert!(decode_element(id).is_err(), "{id}");
        }
    }

    fn two_part(n: usize) -> SetCoverInstance {
        // part 0: {0}, {}, ...; part 1: {1}, {}, ...
        let mut inc = vec![Vec::new(); 2 * n];
        inc[0] = vec![0];
        inc[n] = vec![1];
        SetCoverInstance::new(
            (0..2 * n).map(|s| format!("s{s}")).collect(),
            vec!["a".into(), "b".into()],
            inc,
        )
        .with_part_sizes(&[n, n])
    }

    #[test]
    fn explicit_matches_implicit() {
        let g = build_gadget(2, 2, 2, &GadgetOptions::default()).unwrap().gadget;
        let src = two_part(2);
        let red = apply_reduction(&src, &g, 1_000_000, true).unwrap();
        assert_eq!(red.instance.universe_size(), g.m * 16);
        assert_eq!(red.instance.set_ids, src.set_ids);
        let view = HypercubeView::new(&src, &g).unwrap();
        for mask in 0u32..16 {
            let x: Vec<usize> = (0..4).filter(|s| mask >> s & 1 == 1).collect();
            assert_eq!(red.instance.covers(&x), view.covers(&x), "{x:?}");
        }
        assert!(view.covers(&[0, 2]));
    }

    #[test]
    fn dimension_mismatch() {
        let g = build_gadget(2, 4, 2, &GadgetOptions::default()).unwrap().gadget;
        assert!(matches!(
            apply_reduction_default(&two_part(2), &g),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn size_budget_refusal_names_the_size() {
        let g = build_gadget(2, 2, 2, &GadgetOptions::default()).unwrap().gadget;
        let err = apply_reduction(&two_part(2), &g, 10, true).unwrap_err();
        assert!(err.to_string().contains("2·2^4 = 32"), "{err}");
    }

    #[test]
    fn empty_choice_reports_an_element() {
        let g = build_gadget(2, 2, 2, &GadgetOptions::default()).unwrap().gadget;
        let src = two_part(2);
        let view = HypercubeView::new(&src, &g).unwrap();
        match view.covering_witness(&[]) {
            Err(Error::NotCovered { id }) => assert_eq!(id, "hc:0:(a,a,a,a)"),
            other => panic!("{other:?}"),
        }
    }
}
