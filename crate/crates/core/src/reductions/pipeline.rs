use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::budget::{DEFAULT_SIZE_BUDGET, DEFAULT_WORK_BUDGET};
use crate::error::{Error, Result};
use crate::gadget::{
    build_gadget, check_greedy_infeasibility, GadgetOptions, GapGadget, MatrixRecipe, DEFAULT_EPSILON,
    MAX_ELL,
};
use crate::hypercube::{apply_reduction, reduced_universe_size, HypercubeView};
use crate::model::{pad_partition, CnfFormula, MultipartiteGraph, SetCoverInstance};

use super::clique::clique_to_setcover;
use super::ksum::{ksum_to_vectorsum, DigitParams};
use super::sat::sat_to_setcover;
use super::vectorsum::vectorsum_to_setcover;

/// Default δ in the reported parameter formulas.
pub const DEFAULT_DELTA: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum SourceKind {
    Sat,
    Clique,
    Ksum,
    Vectorsum,
}

impl SourceKind {
    pub fn name(self) -> &'static str {
        match self {
            SourceKind::Sat => "sat",
            SourceKind::Clique => "clique",
            SourceKind::Ksum => "ksum",
            SourceKind::Vectorsum => "vectorsum",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineOptions {
    pub seed: u64,
    pub work_budget: u64,
    pub size_budget: u64,
    /// Requested gap; the closed-form formula is used when absent.
    pub h: Option<usize>,
    pub delta: f64,
    pub epsilon: f64,
    /// Digit base and count for k-SUM.
    pub p: Option<u64>,
    pub d: Option<usize>,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            seed: 0,
            work_budget: DEFAULT_WORK_BUDGET,
            size_budget: DEFAULT_SIZE_BUDGET,
            h: None,
            delta: DEFAULT_DELTA,
            epsilon: DEFAULT_EPSILON,
            p: None,
            d: None,
        }
    }
}

/// Formula and effective parameters of one pipeline run.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PipelineParams {
    pub kind: SourceKind,
    /// Parameter of the source problem.
    pub k: usize,
    /// Number of parts of the set cover instance.
    pub k_eff: usize,
    pub delta: f64,
    pub epsilon: f64,
    pub seed: u64,
    /// `|S|` after padding.
    pub num_sets: usize,
    pub part_width: usize,
    pub source_universe: usize,
    pub h_requested: Option<usize>,
    pub h_formula: Option<f64>,
    pub h_effective: usize,
    pub ell: usize,
    pub m: usize,
    pub reduced_universe: Option<u128>,
    pub gap_target: Option<f64>,
    pub recipe: MatrixRecipe,
    pub explicit: bool,
    pub rainbow_certified: bool,
    pub greedy_decides: bool,
    pub digits: Option<DigitParams>,
    pub outputs: usize,
    pub warnings: Vec<String>,
}

/// A padded source instance with its gadget; the reduced instance is
/// materialized when it fits the size budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GappedInstance {
    pub source: SetCoverInstance,
    pub gadget: GapGadget,
    pub reduced: Option<SetCoverInstance>,
}

impl GappedInstance {
    pub fn view(&self) -> Result<HypercubeView<'_>> {
        HypercubeView::new(&self.source, &self.gadget)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Pipeline {
    pub params: PipelineParams,
    pub outputs: Vec<GappedInstance>,
}

fn log_ratio(n: f64) -> Option<f64> {
    let log_n = libm::log2(n);
    let loglog = libm::log2(log_n);
    (log_n > 0.0 && loglog > 0.0).then(|| log_n / loglog)
}

/// `(1/(1+δ))·(log N / log log N)^{1/k}`.
pub fn gap_target(n: usize, k: usize, delta: f64) -> Option<f64> {
    log_ratio(n as f64).map(|r| libm::pow(r, 1.0 / k as f64) / (1.0 + delta))
}

fn formula_h(kind: SourceKind, sets: usize, k_eff: usize, delta: f64) -> Option<f64> {
    let r = log_ratio(sets as f64)?;
    let root = libm::pow(r, 1.0 / k_eff as f64);
    Some(match kind {
        SourceKind::Clique => root,
        _ => root / (1.0 + delta / 2.0),
    })
}

/// `max(k+1, target)` rounded down to a power of two, capped so that
/// `h^k` stays within the gadget builder's limit.
pub fn effective_gap(k_eff: usize, requested: Option<usize>, formula_h: Option<f64>) -> usize {
    let formula = formula_h.map_or(0, |h| if h >= 1.0 { h as usize } else { 0 });
    let target = (k_eff + 1).max(requested.unwrap_or(formula)).max(2);
    let mut h = 1usize << (usize::BITS - 1 - target.leading_zeros());
    while h > 2 && crate::budget::checked_pow(h as u128, k_eff as u64).is_none_or(|v| v > MAX_ELL as u128) {
        h /= 2;
    }
    h
}

struct Staged {
    source: SetCoverInstance,
    kind: SourceKind,
    k: usize,
    k_eff: usize,
}

fn gap(staged: Vec<Staged>, opts: &PipelineOptions, digits: Option<DigitParams>) -> Result<Pipeline> {
    let first = staged.first().ok_or_else(|| Error::Internal("no instances".into()))?;
    let (kind, k, k_eff) = (first.kind, first.k, first.k_eff);
    let mut padded = Vec::with_capacity(staged.len());
    for s in staged {
        padded.push(pad_partition(&s.source, k_eff).map_err(|e| e.in_stage("pad_partition"))?);
    }
    let source = &padded[0];
    let width = source.part_width().unwrap_or(0);
    if width == 0 {
        return Err(Error::InvalidInstance(
            "every part is empty after padding".into(),
        )
        .in_stage("pad_partition"));
    }
    let h_formula = formula_h(kind, source.num_sets(), k_eff, opts.delta);
    let h_eff = effective_gap(k_eff, opts.h, h_formula);
    let built = build_gadget(
        k_eff,
        width,
        h_eff,
        &GadgetOptions {
            seed: opts.seed,
            work_budget: opts.work_budget,
            epsilon: opts.epsilon,
        },
    )
    .map_err(|e| e.in_stage("build_gadget"))?;
    let g = built.gadget;
    let reduced_universe = reduced_universe_size(g.m, source.universe_size(), g.ell);
    let explicit = reduced_universe.is_some_and(|s| s <= opts.size_budget as u128);
    let mut outputs = Vec::with_capacity(padded.len());
    for src in padded {
        let reduced = if explicit {
            Some(
                apply_reduction(&src, &g, opts.size_budget, true)
                    .map_err(|e| e.in_stage("apply_reduction"))?
                    .instance,
            )
        } else {
            HypercubeView::new(&src, &g).map_err(|e| e.in_stage("apply_reduction"))?;
            None
        };
        outputs.push(GappedInstance {
            source: src,
            gadget: g.clone(),
            reduced,
        });
    }
    let source = &outputs[0].source;
    let mut warnings = built.warnings;
    if !explicit {
        warnings.push(match reduced_universe {
            Some(s) => format!("reduced universe of {s} elements kept implicit"),
            None => format!(
                "reduced universe {}·{}^{} kept implicit",
                g.m,
                source.universe_size(),
                g.ell
            ),
        });
    }
    let params = PipelineParams {
        kind,
        k,
        k_eff,
        delta: opts.delta,
        epsilon: opts.epsilon,
        seed: opts.seed,
        num_sets: source.num_sets(),
        part_width: width,
        source_universe: source.universe_size(),
        h_requested: opts.h,
        h_formula,
        h_effective: g.h,
        ell: g.ell,
        m: g.m,
        reduced_universe,
        gap_target: gap_target(source.num_sets(), k_eff, opts.delta),
        recipe: built.recipe,
        explicit,
        rainbow_certified: true,
        greedy_decides: check_greedy_infeasibility(k_eff, g.ell, source.universe_size(), g.m, g.h),
        digits,
        outputs: outputs.len(),
        warnings,
    };
    Ok(Pipeline { params, outputs })
}

pub fn pipeline_sat(phi: &CnfFormula, k: usize, opts: &PipelineOptions) -> Result<Pipeline> {
    let source = sat_to_setcover(phi, k, opts.size_budget).map_err(|e| e.in_stage("sat_to_setcover"))?;
    gap(
        alloc::vec![Staged {
            source,
            kind: SourceKind::Sat,
            k,
            k_eff: k,
        }],
        opts,
        None,
    )
}

pub fn pipeline_clique(g: &MultipartiteGraph, k: usize, opts: &PipelineOptions) -> Result<Pipeline> {
    let source = clique_to_setcover(g, k).map_err(|e| e.in_stage("clique_to_setcover"))?;
    gap(
        alloc::vec![Staged {
            source,
            kind: SourceKind::Clique,
            k,
            k_eff: k * (k - 1) / 2,
        }],
        opts,
        None,
    )
}

/// One gapped instance per mapping; all share one gadget.
pub fn pipeline_ksum(lists: &[Vec<i64>], opts: &PipelineOptions) -> Result<Pipeline> {
    let k = lists.len();
    let r = lists.iter().flatten().map(|x| x.abs()).max().unwrap_or(0);
    let digits = DigitParams::choose(k, r, opts.p, opts.d).map_err(|e| e.in_stage("ksum_to_vectorsum"))?;
    let family = ksum_to_vectorsum(lists, &digits, opts.size_budget).map_err(|e| e.in_stage("ksum_to_vectorsum"))?;
    let bound = family.iter().map(|vs| vs.bound).max().unwrap_or(0);
    let mut staged = Vec::with_capacity(family.len());
    for mut vs in family {
        // one bound for the whole family keeps the universes aligned
        vs.bound = bound;
        let source = vectorsum_to_setcover(&vs, opts.size_budget).map_err(|e| e.in_stage("vectorsum_to_setcover"))?;
        staged.push(Staged {
            source,
            kind: SourceKind::Ksum,
            k,
            k_eff: k,
        });
    }
    gap(staged, opts, Some(digits))
}

impl core::fmt::Display for SourceKind {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

impl core::str::FromStr for SourceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sat" => Ok(SourceKind::Sat),
            "clique" => Ok(SourceKind::Clique),
            "ksum" => Ok(SourceKind::Ksum),
            "vectorsum" => Ok(SourceKind::Vectorsum),
            other => Err(Error::InvalidParameter(format!("unknown source kind {other}"))),
        }
    }
}
