//! Two-sided checks of pipeline outputs against the source problem.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::budget::{checked_pow, Budget};
use crate::error::{Error, Result};
use crate::model::{CnfFormula, MultipartiteGraph};
use crate::reductions::clique::clique_cover_ids;
use crate::reductions::ksum::{realized_carries, DigitParams};
use crate::reductions::pipeline::{GappedInstance, Pipeline};
use crate::reductions::sat::sat_cover_ids;
use crate::reductions::vectorsum::vectorsum_cover_ids;

use super::brute::{brute_clique, brute_ksum, brute_sat};
use super::exact::{exact_opt, exact_opt_model, ExactResult};
use super::greedy::greedy_cover;

/// The problem a pipeline started from.
#[derive(Debug, Clone, PartialEq)]
pub enum SourceProblem {
    Sat { formula: CnfFormula, k: usize },
    Clique { graph: MultipartiteGraph, k: usize },
    Ksum { lists: Vec<Vec<i64>>, digits: DigitParams },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
    NotApplicable,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Inconclusive => "INCONCLUSIVE",
            Status::NotApplicable => "N/A",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerdictLine {
    pub check: &'static str,
    pub status: Status,
    pub detail: String,
}

impl fmt::Display for VerdictLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<12} {:<12} {}", self.check, self.status, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    /// Oracle answer for the source problem; `None` when it ran out of
    /// budget.
    pub source_yes: Option<bool>,
    pub lines: Vec<VerdictLine>,
}

impl VerifyReport {
    /// 0 when nothing failed or stayed inconclusive, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        let bad = self
            .lines
            .iter()
            .any(|l| matches!(l.status, Status::Fail | Status::Inconclusive));
        i32::from(bad)
    }
}

fn line(check: &'static str, status: Status, detail: impl Into<String>) -> VerdictLine {
    VerdictLine {
        check,
        status,
        detail: detail.into(),
    }
}

/// Source certificate mapped to `(output index, cover ids)`.
type Certificate = Option<(usize, Vec<String>)>;

fn certificate(problem: &SourceProblem, budget: &Budget) -> Result<Certificate> {
    Ok(match problem {
        SourceProblem::Sat { formula, k } => {
            brute_sat(formula, budget)?.map(|a| (0, sat_cover_ids(formula, *k, &a)))
        }
        SourceProblem::Clique { graph, k } => brute_clique(graph, *k, budget)?.map(|mut vs| {
            let owner = graph.part_map();
            vs.sort_by_key(|&v| owner[v]);
            (0, clique_cover_ids(&vs))
        }),
        SourceProblem::Ksum { lists, digits } => brute_ksum(lists, budget)?.map(|picks| {
            let values: Vec<i64> = picks.iter().enumerate().map(|(i, &x)| lists[i][x]).collect();
            let c = realized_carries(digits, &values) as usize;
            (c, vectorsum_cover_ids(&picks))
        }),
    })
}

fn solve(out: &GappedInstance, bound: usize, budget: &Budget) -> Result<ExactResult> {
    match &out.reduced {
        Some(inst) => exact_opt(inst, bound, budget),
        None => exact_opt_model(&out.view()?, bound, budget),
    }
}

fn ids(out: &GappedInstance, sets: &[usize]) -> String {
    let names: Vec<&str> = sets.iter().map(|&s| out.source.set_ids[s].as_str()).collect();
    format!("{{{}}}", names.join(", "))
}

/// Check `yes ⇒ opt ≤ k_eff` and `no ⇒ opt > h_effective` with the exact
/// solver, the reduced universe size where it was materialized, and that
/// greedy never beats the gap on no-instances.
pub fn verify_pipeline(problem: &SourceProblem, pipeline: &Pipeline, budget: &Budget) -> Result<VerifyReport> {
    let params = &pipeline.params;
    if pipeline.outputs.is_empty() {
        return Err(Error::InvalidInstance("pipeline has no outputs".into()));
    }
    let mut lines = Vec::new();

    let explicit: Vec<&GappedInstance> = pipeline.outputs.iter().filter(|o| o.reduced.is_some()).collect();
    if explicit.is_empty() {
        lines.push(line("universe", Status::NotApplicable, "reduced universe kept implicit"));
    } else {
        let bad = explicit.iter().find(|o| {
            let want = checked_pow(o.source.universe_size() as u128, o.gadget.ell as u64)
                .and_then(|p| p.checked_mul(o.gadget.m as u128));
            want != Some(o.reduced.as_ref().map_or(0, |r| r.universe_size()) as u128)
        });
        lines.push(match bad {
            None => line(
                "universe",
                Status::Pass,
                format!(
                    "|U'| = m·|U|^ℓ = {}·{}^{} on {} output(s)",
                    params.m,
                    params.source_universe,
                    params.ell,
                    explicit.len()
                ),
            ),
            Some(o) => line(
                "universe",
                Status::Fail,
                format!("|U'| = {}", o.reduced.as_ref().map_or(0, |r| r.universe_size())),
            ),
        });
    }

    let cert = match certificate(problem, budget) {
        Ok(c) => c,
        Err(e) if e.is_budget() => {
            for check in ["completeness", "soundness"] {
                lines.push(line(check, Status::Inconclusive, format!("source oracle: {e}")));
            }
            return Ok(VerifyReport {
                source_yes: None,
                lines,
            });
        }
        Err(e) => return Err(e),
    };

    match &cert {
        Some((index, cover)) => {
            lines.push(completeness(pipeline, *index, cover, budget)?);
            lines.push(line("soundness", Status::NotApplicable, "source is a yes-instance"));
            lines.push(line("greedy", Status::NotApplicable, "source is a yes-instance"));
        }
        None => {
            lines.push(line("completeness", Status::NotApplicable, "source is a no-instance"));
            lines.push(soundness(pipeline, budget)?);
            lines.push(greedy(pipeline));
        }
    }
    Ok(VerifyReport {
        source_yes: Some(cert.is_some()),
        lines,
    })
}

fn completeness(pipeline: &Pipeline, index: usize, cover: &[String], budget: &Budget) -> Result<VerdictLine> {
    let k = pipeline.params.k_eff;
    let Some(out) = pipeline.outputs.get(index) else {
        return Ok(line("completeness", Status::Fail, format!("no output {index}")));
    };
    let chosen: Option<Vec<usize>> = cover.iter().map(|id| out.source.set_index(id)).collect();
    let Some(mut chosen) = chosen else {
        return Ok(line("completeness", Status::Fail, "certificate sets missing from output"));
    };
    chosen.sort_unstable();
    let view = out.view()?;
    if !out.source.is_rainbow(&chosen) || !view.covers(&chosen) {
        return Ok(line(
            "completeness",
            Status::Fail,
            format!("certificate {} does not cover output {index}", ids(out, &chosen)),
        ));
    }
    Ok(match solve(out, k, budget) {
        Ok(ExactResult::Found { size, witness }) => line(
            "completeness",
            Status::Pass,
            format!(
                "output {index}: rainbow cover {} of size {k}; opt = {size} ≤ {k}, witness {}",
                ids(out, &chosen),
                ids(out, &witness)
            ),
        ),
        Ok(other) => line("completeness", Status::Fail, format!("exact solver: {other:?} at bound {k}")),
        Err(e) if e.is_budget() => line("completeness", Status::Inconclusive, e.to_string()),
        Err(e) => return Err(e),
    })
}

fn soundness(pipeline: &Pipeline, budget: &Budget) -> Result<VerdictLine> {
    let h = pipeline.params.h_effective;
    for (index, out) in pipeline.outputs.iter().enumerate() {
        match solve(out, h, budget) {
            Ok(ExactResult::Found { size, witness }) => {
                return Ok(line(
                    "soundness",
                    Status::Fail,
                    format!("output {index}: cover {} of size {size} ≤ h = {h}", ids(out, &witness)),
                ))
            }
            Ok(_) => {}
            Err(e) if e.is_budget() => {
                return Ok(line("soundness", Status::Inconclusive, format!("output {index}: {e}")))
            }
            Err(e) => return Err(e),
        }
    }
    Ok(line(
        "soundness",
        Status::Pass,
        format!("opt > h = {h} on all {} output(s)", pipeline.outputs.len()),
    ))
}

fn greedy(pipeline: &Pipeline) -> VerdictLine {
    let k = pipeline.params.k_eff;
    let mut checked = 0;
    for (index, out) in pipeline.outputs.iter().enumerate() {
        let Some(reduced) = &out.reduced else { continue };
        checked += 1;
        if let Ok(g) = greedy_cover(reduced) {
            if g.size <= k {
                return line(
                    "greedy",
                    Status::Fail,
                    format!("output {index}: greedy cover of size {} ≤ k = {k}", g.size),
                );
            }
        }
    }
    if checked == 0 {
        line("greedy", Status::NotApplicable, "reduced universe kept implicit")
    } else {
        line("greedy", Status::Pass, format!("greedy size > k = {k} on {checked} output(s)"))
    }
}
