//! Structural transformations on proofs: weakening, contraction, general
//! axioms and cut.

use thiserror::Error;

use crate::diagram::{Diagram, Kind, Sequent, Side, UnitaryDiagram};
use crate::inversion::{invert, replacement_for};
use crate::proof::{check_proof, rule_instance, Aux, CheckError, DiagProof, RuleName};
use crate::prover::{prove, ProofOutcome, ProveError};

/// Largest weight accepted by [`general_axiom`].
pub const MAX_AXIOM_WEIGHT: usize = 64;

#[derive(Debug, Clone, Error)]
pub enum TransformError {
    #[error("{diagram} does not occur in the {side:?} side")]
    NotPresent { diagram: String, side: Side },
    #[error("contraction needs two copies, found {count}")]
    Multiplicity { count: usize },
    #[error("{0}")]
    Domain(String),
    #[error("input proof is invalid: {0}")]
    InvalidProof(#[from] CheckError),
    #[error("weight {weight} exceeds the cap of {MAX_AXIOM_WEIGHT}")]
    WeightCap { weight: usize },
    #[error("result has height {got}, above the bound {bound}")]
    Height { got: usize, bound: usize },
    #[error(transparent)]
    Prove(#[from] ProveError),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

fn locate(conclusion: &Sequent, rule: RuleName, principal: Option<&Diagram>) -> Option<usize> {
    let side = rule.side()?;
    let d = principal?;
    conclusion.side(side).iter().position(|x| x == d)
}

/// Adds `d` to `side` of every sequent in `p` that inherits that side.
/// Height is unchanged. The input should be a valid proof.
pub fn weaken(p: &DiagProof, d: &Diagram, side: Side) -> DiagProof {
    let conclusion = p.conclusion.with(side, d.clone());
    let keeps: Vec<bool> = match p.matched_premises() {
        Ok(specs) => specs.iter().map(|s| s.keeps_right).collect(),
        Err(_) => vec![true; p.premises.len()],
    };
    let premises = p
        .premises
        .iter()
        .zip(keeps)
        .map(|(child, keeps_right)| {
            if side == Side::Left || keeps_right {
                weaken(child, d, side)
            } else {
                child.clone()
            }
        })
        .collect();
    DiagProof {
        rule: p.rule,
        principal: locate(&conclusion, p.rule, p.principal_diagram()),
        conclusion,
        aux: p.aux.clone(),
        premises,
    }
}

fn weaken_all(mut p: DiagProof, left: &[Diagram], right: &[Diagram]) -> DiagProof {
    for d in left {
        p = weaken(&p, d, Side::Left);
    }
    for d in right {
        p = weaken(&p, d, Side::Right);
    }
    p
}

/// Removes one of two or more copies of `d` from `side`, without increasing
/// the height.
pub fn contract(p: &DiagProof, d: &Diagram, side: Side) -> Result<DiagProof, TransformError> {
    let c = &p.conclusion;
    let count = c.count(side, d);
    if count < 2 {
        return Err(TransformError::Multiplicity { count });
    }
    let target = c.without(side, d).expect("counted above");
    if p.premises.is_empty() {
        rule_instance(&target, p.rule, None, &Aux::None)
            .map_err(|e| TransformError::Internal(format!("leaf lost after contraction: {e}")))?;
        return Ok(DiagProof::leaf(p.rule, target));
    }
    let specs = p.matched_premises().map_err(|source| {
        TransformError::InvalidProof(CheckError { path: Vec::new(), rule: p.rule, conclusion: c.to_string(), source })
    })?;
    let principal = p.principal_diagram().cloned();
    let principal_is_d = p.rule.side() == Some(side) && principal.as_ref() == Some(d);

    let mut premises = Vec::with_capacity(p.premises.len());
    if !principal_is_d {
        for (child, spec) in p.premises.iter().zip(&specs) {
            premises.push(if side == Side::Left || spec.keeps_right { contract(child, d, side)? } else { child.clone() });
        }
    } else {
        let index = p.principal.expect("inner rule");
        let base = c.without(side, d).expect("principal occurs");
        for (i, (child, spec)) in p.premises.iter().zip(&specs).enumerate() {
            let inherits = side == Side::Left || spec.keeps_right;
            let child_copies = child.conclusion.count(side, d);
            let q = if !inherits {
                // restricted succedent: the premise is the same at the contracted conclusion
                child.clone()
            } else if child_copies >= 2 {
                // the principal is kept, so both copies are still present
                contract(child, d, side)?
            } else {
                // invert the remaining copy the same way, then merge the doubled additions
                let left_add = crate::inversion::multiset_minus(spec.sequent.antecedent(), base.antecedent());
                let right_add = crate::inversion::multiset_minus(spec.sequent.succedent(), base.succedent());
                let keep = |j: usize, _: bool| j == i;
                let mut r = replacement_for(c, p.rule, index, &p.aux, keep)?;
                r.outputs = vec![(left_add.clone(), right_add.clone())];
                let mut q = invert(child, &r)?.pop().expect("one output");
                for x in &left_add {
                    q = contract(&q, x, Side::Left)?;
                }
                for x in &right_add {
                    q = contract(&q, x, Side::Right)?;
                }
                q
            };
            premises.push(q);
        }
    }
    Ok(DiagProof {
        rule: p.rule,
        principal: locate(&target, p.rule, principal.as_ref()),
        conclusion: target,
        aux: p.aux.clone(),
        premises,
    })
}

fn core_axiom(d: &Diagram) -> Result<DiagProof, TransformError> {
    let s = Sequent::new(vec![d.clone()], vec![d.clone()]);
    let node = |rule: RuleName, aux: Aux, premises: Vec<DiagProof>| {
        DiagProof::node(rule, s.clone(), d, aux, premises)
    };
    Ok(match d {
        Diagram::And(a, b) => {
            // A & B |- A & B from A, B |- A & B
            let inner = Sequent::new(vec![(**a).clone(), (**b).clone()], vec![d.clone()]);
            let pa = weaken(&core_axiom(a)?, b, Side::Left);
            let pb = weaken(&core_axiom(b)?, a, Side::Left);
            let and_r = DiagProof::node(RuleName::AndR, inner, d, Aux::None, vec![pa, pb]);
            node(RuleName::AndL, Aux::None, vec![and_r])
        }
        Diagram::Or(a, b) => {
            let mut branches = Vec::new();
            for (x, y) in [(a, b), (b, a)] {
                let inner = Sequent::new(vec![(**x).clone()], vec![d.clone()]);
                let px = weaken(&core_axiom(x)?, y, Side::Right);
                branches.push(DiagProof::node(RuleName::OrR, inner, d, Aux::None, vec![px]));
            }
            node(RuleName::OrL, Aux::None, branches)
        }
        Diagram::Implies(a, b) => {
            let inner = Sequent::new(vec![(**a).clone(), d.clone()], vec![(**b).clone()]);
            let left = weaken(&core_axiom(a)?, d, Side::Left);
            let right = weaken(&core_axiom(b)?, a, Side::Left);
            let imp_l = DiagProof::node(RuleName::ImpL, inner, d, Aux::None, vec![left, right]);
            node(RuleName::ImpR, Aux::None, vec![imp_l])
        }
        Diagram::Unitary(u) => return unitary_axiom(d, u, &s),
    })
}

fn unitary_axiom(d: &Diagram, u: &UnitaryDiagram, s: &Sequent) -> Result<DiagProof, TransformError> {
    if u.is_positive_literal() {
        return Ok(DiagProof::leaf(RuleName::Axiom, s.clone()));
    }
    if u.is_falsum_shape() {
        return Ok(DiagProof::leaf(RuleName::BotL, s.clone()));
    }
    if u.is_verum_shape() {
        return Ok(DiagProof::leaf(RuleName::TopR, s.clone()));
    }
    let on_right = |rule: RuleName, aux: Aux, premises: Vec<DiagProof>| {
        DiagProof::node(rule, s.clone(), d, aux, premises)
    };
    Ok(match u.kind() {
        Kind::Venn if u.as_literal().is_some() => {
            // -c |- -c by LitR then LitL
            let (c, _) = u.as_literal().expect("literal");
            let pos = Diagram::literal(c, true);
            let ax = DiagProof::leaf(RuleName::Axiom, Sequent::new(vec![pos.clone(), d.clone()], vec![pos.clone()]));
            let lit_l = DiagProof::node(RuleName::LitL, Sequent::new(vec![pos.clone(), d.clone()], vec![]), d, Aux::None, vec![ax]);
            on_right(RuleName::LitR, Aux::None, vec![lit_l])
        }
        Kind::Venn if u.shaded_zones().len() > 1 => {
            let zones = u.shaded_zones();
            let (first, rest) = split_first(zones);
            let d1 = Diagram::from(u.with_shading(first.clone()));
            let d2 = Diagram::from(u.with_shading(rest.clone()));
            let aux = Aux::Cover(first, rest);
            let branch = |x: &Diagram, y: &Diagram| -> Result<DiagProof, TransformError> {
                let inner = Sequent::new(vec![x.clone()], vec![d.clone()]);
                let px = weaken(&core_axiom(x)?, y, Side::Right);
                Ok(DiagProof::node(RuleName::SepR, inner, d, aux.clone(), vec![px]))
            };
            let (b1, b2) = (branch(&d1, &d2)?, branch(&d2, &d1)?);
            DiagProof::node(RuleName::SepL, s.clone(), d, aux.clone(), vec![b1, b2])
        }
        Kind::Venn => {
            let z = u.shaded_zones().iter().next().expect("one shaded zone").clone();
            let lits: Vec<Diagram> = z
                .in_set()
                .iter()
                .map(|c| Diagram::literal(c, true))
                .chain(z.out_set().iter().map(|c| Diagram::literal(c, false)))
                .collect();
            let inner = Sequent::new(lits.clone(), vec![d.clone()]);
            let mut premises = Vec::new();
            for (i, l) in lits.iter().enumerate() {
                let others: Vec<Diagram> = lits.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, x)| x.clone()).collect();
                premises.push(weaken_all(core_axiom(l)?, &others, &[]));
            }
            let sing_r = DiagProof::node(RuleName::SingDecR, inner, d, Aux::None, premises);
            DiagProof::node(RuleName::SingDecL, s.clone(), d, Aux::None, vec![sing_r])
        }
        Kind::PureEuler if u.missing_zones().len() > 1 => {
            let (first, rest) = split_first(&u.missing_zones());
            let d1 = Diagram::from(u.with_missing(&first));
            let d2 = Diagram::from(u.with_missing(&rest));
            let aux = Aux::Cover(first, rest);
            let inner = Sequent::new(vec![d1.clone(), d2.clone()], vec![d.clone()]);
            let p1 = weaken(&core_axiom(&d1)?, &d2, Side::Left);
            let p2 = weaken(&core_axiom(&d2)?, &d1, Side::Left);
            let mz_r = DiagProof::node(RuleName::MzSepR, inner, d, aux.clone(), vec![p1, p2]);
            DiagProof::node(RuleName::MzSepL, s.clone(), d, aux, vec![mz_r])
        }
        Kind::PureEuler => {
            // d |- d by ImpDecR, then ImpDecL whose premises are axioms
            let z = u.missing_zones().into_iter().next().expect("one missing zone");
            let ins: Vec<Diagram> = z.in_set().iter().map(|c| Diagram::literal(c, true)).collect();
            let outs: Vec<Diagram> = z.out_set().iter().map(|c| Diagram::literal(c, true)).collect();
            let mut ante = vec![d.clone()];
            ante.extend(ins.iter().cloned());
            let inner = Sequent::new(ante.clone(), outs.clone());
            let at = inner.antecedent().iter().position(|x| x == d).expect("principal present");
            let specs = rule_instance(&inner, RuleName::ImpDecL, Some(at), &Aux::None)
                .map_err(|e| TransformError::Internal(e.to_string()))?;
            let premises = specs.into_iter().map(|spec| DiagProof::leaf(RuleName::Axiom, spec.sequent)).collect();
            let dec_l = DiagProof::node(RuleName::ImpDecL, inner, d, Aux::None, premises);
            on_right(RuleName::ImpDecR, Aux::None, vec![dec_l])
        }
        Kind::EulerVenn => {
            let e = Diagram::from(u.euler_part().map_err(|e| TransformError::Internal(e.to_string()))?);
            let v = Diagram::from(u.venn_part().map_err(|e| TransformError::Internal(e.to_string()))?);
            let inner = Sequent::new(vec![d.clone(), e.clone()], vec![v.clone()]);
            let p_euler = weaken(&core_axiom(&e)?, d, Side::Left);
            let p_venn = weaken(&core_axiom(&v)?, &e, Side::Left);
            let det_l = DiagProof::node(RuleName::DetL, inner, d, Aux::None, vec![p_euler, p_venn]);
            on_right(RuleName::DetR, Aux::None, vec![det_l])
        }
    })
}

fn split_first<T: Ord + Clone>(set: &std::collections::BTreeSet<T>) -> (std::collections::BTreeSet<T>, std::collections::BTreeSet<T>) {
    let first = set.iter().next().cloned().into_iter().collect();
    let rest = set.iter().skip(1).cloned().collect();
    (first, rest)
}

/// A proof of `d, Γ ⊢ Δ, d` built by recursion on the weight of `d`.
pub fn general_axiom(d: &Diagram, gamma: &[Diagram], delta: &[Diagram]) -> Result<DiagProof, TransformError> {
    let weight = d.weight();
    if weight > MAX_AXIOM_WEIGHT {
        return Err(TransformError::WeightCap { weight });
    }
    Ok(weaken_all(core_axiom(d)?, gamma, delta))
}

/// Given proofs of `Γ ⊢ Δ, d` and `d, Γ' ⊢ Δ'`, returns a cut-free proof of
/// `Γ, Γ' ⊢ Δ, Δ'`.
pub fn cut(p1: &DiagProof, p2: &DiagProof, d: &Diagram) -> Result<DiagProof, TransformError> {
    check_proof(p1)?;
    check_proof(p2)?;
    let gamma_ = p2
        .conclusion
        .without(Side::Left, d)
        .ok_or_else(|| TransformError::NotPresent { diagram: d.to_string(), side: Side::Left })?;
    let delta = p1
        .conclusion
        .without(Side::Right, d)
        .ok_or_else(|| TransformError::NotPresent { diagram: d.to_string(), side: Side::Right })?;
    let mut ante = p1.conclusion.antecedent().to_vec();
    ante.extend_from_slice(gamma_.antecedent());
    let mut succ = delta.succedent().to_vec();
    succ.extend_from_slice(p2.conclusion.succedent());
    let goal = Sequent::new(ante, succ);
    match prove(&goal)? {
        ProofOutcome::Proved(q) => Ok(q),
        ProofOutcome::Refuted => Err(TransformError::Internal(format!("cut conclusion {goal} was refuted"))),
    }
}
