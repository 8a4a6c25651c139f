//! Height-preserving inversion of rules on existing proofs.

use crate::diagram::{Diagram, Sequent, Side};
use crate::proof::{rule_instance, Aux, DiagProof, RuleName};
use crate::prover::{prove, ProofOutcome};
use crate::transforms::TransformError;

/// Replaces one occurrence of `target` on `side` by each of `outputs`
/// (diagrams added on the left and on the right).
#[derive(Debug, Clone)]
pub(crate) struct Replacement {
    pub side: Side,
    pub target: Diagram,
    pub rule: RuleName,
    pub aux: Aux,
    pub outputs: Vec<(Vec<Diagram>, Vec<Diagram>)>,
}

/// `a` minus `b` as multisets; `b` must be contained in `a`.
pub(crate) fn multiset_minus(a: &[Diagram], b: &[Diagram]) -> Vec<Diagram> {
    let mut out = a.to_vec();
    for x in b {
        if let Some(i) = out.iter().position(|y| y == x) {
            out.remove(i);
        }
    }
    out
}

fn extend(s: &Sequent, left: &[Diagram], right: &[Diagram]) -> Sequent {
    let mut ante = s.antecedent().to_vec();
    ante.extend_from_slice(left);
    let mut succ = s.succedent().to_vec();
    succ.extend_from_slice(right);
    Sequent::new(ante, succ)
}

fn leaf_for(s: &Sequent, preferred: RuleName) -> Option<DiagProof> {
    [preferred, RuleName::Axiom, RuleName::BotL, RuleName::TopR]
        .into_iter()
        .find(|&r| rule_instance(s, r, None, &Aux::None).is_ok())
        .map(|r| DiagProof::leaf(r, s.clone()))
}

fn relocate_principal(p: &DiagProof, conclusion: &Sequent) -> Option<usize> {
    let side = p.rule.side()?;
    let d = p.principal_diagram()?;
    conclusion.side(side).iter().position(|x| x == d)
}

/// Proves `goal` afresh and accepts the result only within `bound`.
fn reprove_within(goal: &Sequent, bound: usize) -> Result<DiagProof, TransformError> {
    match prove(goal)? {
        ProofOutcome::Proved(q) if q.height() <= bound => Ok(q),
        ProofOutcome::Proved(q) => Err(TransformError::Height { got: q.height(), bound }),
        ProofOutcome::Refuted => Err(TransformError::Internal(format!("inverted premise {goal} is not provable"))),
    }
}

pub(crate) fn invert(p: &DiagProof, r: &Replacement) -> Result<Vec<DiagProof>, TransformError> {
    if r.outputs.is_empty() {
        return Ok(Vec::new());
    }
    let c = &p.conclusion;
    let base = c
        .without(r.side, &r.target)
        .ok_or_else(|| TransformError::NotPresent { diagram: r.target.to_string(), side: r.side })?;
    let goals: Vec<Sequent> = r.outputs.iter().map(|(l, rr)| extend(&base, l, rr)).collect();

    let principal_is_target = p.rule.side() == Some(r.side) && p.principal_diagram() == Some(&r.target);
    let copies = c.count(r.side, &r.target);

    let mut out: Vec<Option<DiagProof>> = goals.iter().map(|g| (g == c).then(|| p.clone())).collect();
    if out.iter().all(Option::is_some) {
        return Ok(out.into_iter().flatten().collect());
    }

    if principal_is_target && p.rule == r.rule && p.aux == r.aux {
        for (slot, g) in out.iter_mut().zip(&goals) {
            if slot.is_none() {
                *slot = p.premises.iter().find(|q| q.conclusion == *g).cloned();
            }
        }
        if out.iter().all(Option::is_some) {
            return Ok(out.into_iter().flatten().collect());
        }
    }

    if !principal_is_target || copies >= 2 {
        if p.premises.is_empty() {
            for (slot, g) in out.iter_mut().zip(&goals) {
                if slot.is_none() {
                    *slot = leaf_for(g, p.rule);
                }
            }
        } else {
            let specs = p.matched_premises().map_err(|e| TransformError::Internal(e.to_string()))?;
            let mut per_child: Vec<Option<Vec<DiagProof>>> = Vec::new();
            for (child, spec) in p.premises.iter().zip(&specs) {
                if r.side == Side::Left || spec.keeps_right {
                    per_child.push(Some(invert(child, r)?));
                } else {
                    per_child.push(None);
                }
            }
            for (j, (slot, g)) in out.iter_mut().zip(&goals).enumerate() {
                if slot.is_some() {
                    continue;
                }
                let premises = p
                    .premises
                    .iter()
                    .zip(&per_child)
                    .map(|(child, inv)| inv.as_ref().map_or_else(|| child.clone(), |v| v[j].clone()))
                    .collect();
                *slot = Some(DiagProof {
                    rule: p.rule,
                    conclusion: g.clone(),
                    principal: relocate_principal(p, g),
                    aux: p.aux.clone(),
                    premises,
                });
            }
        }
    }

    let bound = p.height();
    out.into_iter().zip(&goals).map(|(slot, g)| slot.map_or_else(|| reprove_within(g, bound), Ok)).collect()
}

/// Builds the replacement that inverts `rule` at `principal`, keeping only
/// the premises selected by `keep`.
pub(crate) fn replacement_for(
    conclusion: &Sequent,
    rule: RuleName,
    principal: usize,
    aux: &Aux,
    keep: impl Fn(usize, bool) -> bool,
) -> Result<Replacement, TransformError> {
    let side = rule.side().ok_or_else(|| TransformError::Domain(format!("{rule} has no principal diagram")))?;
    let specs = rule_instance(conclusion, rule, Some(principal), aux).map_err(|e| TransformError::Domain(e.to_string()))?;
    let target = conclusion.side(side)[principal].clone();
    let base = conclusion.without(side, &target).expect("principal occurs");
    let outputs = specs
        .iter()
        .enumerate()
        .filter(|(i, s)| keep(*i, s.keeps_right))
        .map(|(_, s)| {
            (
                multiset_minus(s.sequent.antecedent(), base.antecedent()),
                multiset_minus(s.sequent.succedent(), base.succedent()),
            )
        })
        .collect();
    Ok(Replacement { side, target, rule, aux: aux.clone(), outputs })
}

/// Proofs of the premises of `rule` applied backwards at `principal` in the
/// conclusion of `p`, none taller than `p`.
///
/// Besides the invertible rules, `DetL` yields its Venn premise and `ImpDecL`
/// yields the premises that add an out-contour literal.
pub fn invertible_premises(
    p: &DiagProof,
    rule: RuleName,
    principal: usize,
    aux: &Aux,
) -> Result<Vec<DiagProof>, TransformError> {
    let replacement = match rule {
        _ if rule.is_invertible() => replacement_for(&p.conclusion, rule, principal, aux, |_, _| true)?,
        RuleName::DetL => replacement_for(&p.conclusion, rule, principal, aux, |i, _| i == 1)?,
        RuleName::ImpDecL => replacement_for(&p.conclusion, rule, principal, aux, |_, keeps| keeps)?,
        _ => return Err(TransformError::Domain(format!("{rule} is not invertible"))),
    };
    invert(p, &replacement)
}
