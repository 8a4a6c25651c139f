//! Decision procedure and proof checker for the multi-succedent sentential
//! calculus, used as an independent oracle for diagram sequents.

use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use thiserror::Error;

use crate::diagram::Side;
use crate::formula::{Formula, FormulaSequent};
use crate::search::{with_big_stack, BudgetExhausted, Calculus, Derivation, Engine, Goal, Id, Outcome, PremiseShape, Template};

/// Default limit on expanded goals per call.
pub const IPC_BUDGET: usize = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IpcRule {
    Axiom,
    BotL,
    AndL,
    AndR,
    OrL,
    OrR,
    ImpL,
    ImpR,
}

impl IpcRule {
    pub fn is_leaf(self) -> bool {
        matches!(self, IpcRule::Axiom | IpcRule::BotL)
    }

    fn side(self) -> Option<Side> {
        match self {
            IpcRule::Axiom | IpcRule::BotL => None,
            IpcRule::AndL | IpcRule::OrL | IpcRule::ImpL => Some(Side::Left),
            IpcRule::AndR | IpcRule::OrR | IpcRule::ImpR => Some(Side::Right),
        }
    }
}

impl fmt::Display for IpcRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A sentential proof; `principal` indexes into the sorted side of the conclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaProof {
    pub rule: IpcRule,
    pub conclusion: FormulaSequent,
    pub principal: Option<(Side, usize)>,
    pub premises: Vec<FormulaProof>,
}

impl FormulaProof {
    pub fn height(&self) -> usize {
        self.premises.iter().map(|p| p.height() + 1).max().unwrap_or(0)
    }
}

#[derive(Debug, Clone)]
pub enum IpcOutcome {
    Proved(FormulaProof),
    Refuted,
}

impl IpcOutcome {
    pub fn is_proved(&self) -> bool {
        matches!(self, IpcOutcome::Proved(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{rule} at node {path:?}: {message}")]
pub struct IpcCheckError {
    pub path: Vec<usize>,
    pub rule: IpcRule,
    pub message: String,
}

fn remove_at(v: &[Formula], i: usize) -> Vec<Formula> {
    let mut v = v.to_vec();
    v.remove(i);
    v
}

fn plus(v: &[Formula], extra: &[&Formula]) -> Vec<Formula> {
    let mut v = v.to_vec();
    v.extend(extra.iter().map(|f| (*f).clone()));
    v
}

/// Premises of a rule instance, each flagged with whether it keeps the
/// succedent context.
pub fn ipc_instance(
    c: &FormulaSequent,
    rule: IpcRule,
    principal: Option<(Side, usize)>,
) -> Result<Vec<(FormulaSequent, bool)>, String> {
    let (gamma, delta) = (c.antecedent(), c.succedent());
    if rule.is_leaf() {
        if principal.is_some() {
            return Err("leaf rules take no principal formula".into());
        }
        let ok = match rule {
            IpcRule::Axiom => gamma.iter().any(|f| matches!(f, Formula::Var(_)) && delta.contains(f)),
            _ => gamma.contains(&Formula::Bottom),
        };
        return if ok { Ok(Vec::new()) } else { Err("no matching atom or falsum".into()) };
    }
    let (side, idx) = principal.ok_or("missing principal formula")?;
    if Some(side) != rule.side() {
        return Err(format!("principal must be on the {} side", rule.side().unwrap_or(Side::Left)));
    }
    let p = c_side(c, side).get(idx).ok_or("principal index out of range")?;
    let seq = FormulaSequent::new;
    let out = match (rule, p) {
        (IpcRule::AndL, Formula::And(a, b)) => vec![(seq(plus(&remove_at(gamma, idx), &[a, b]), delta.to_vec()), true)],
        (IpcRule::OrL, Formula::Or(a, b)) => {
            let rest = remove_at(gamma, idx);
            vec![(seq(plus(&rest, &[a]), delta.to_vec()), true), (seq(plus(&rest, &[b]), delta.to_vec()), true)]
        }
        (IpcRule::ImpL, Formula::Implies(a, b)) => vec![
            (seq(gamma.to_vec(), vec![(**a).clone()]), false),
            (seq(plus(&remove_at(gamma, idx), &[b]), delta.to_vec()), true),
        ],
        (IpcRule::AndR, Formula::And(a, b)) => {
            let rest = remove_at(delta, idx);
            vec![(seq(gamma.to_vec(), plus(&rest, &[a])), true), (seq(gamma.to_vec(), plus(&rest, &[b])), true)]
        }
        (IpcRule::OrR, Formula::Or(a, b)) => vec![(seq(gamma.to_vec(), plus(&remove_at(delta, idx), &[a, b])), true)],
        (IpcRule::ImpR, Formula::Implies(a, b)) => {
            vec![(seq(plus(gamma, &[a]), vec![(**b).clone()]), false)]
        }
        _ => return Err(format!("principal {p} does not have the shape of {rule}")),
    };
    Ok(out)
}

fn c_side(c: &FormulaSequent, side: Side) -> &[Formula] {
    match side {
        Side::Left => c.antecedent(),
        Side::Right => c.succedent(),
    }
}

fn same_multiset(a: &[FormulaSequent], b: &[FormulaSequent]) -> bool {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort();
    b.sort();
    a == b
}

/// Checks every node of a sentential proof.
pub fn check_ipc_proof(p: &FormulaProof) -> Result<(), IpcCheckError> {
    fn go(p: &FormulaProof, path: &mut Vec<usize>) -> Result<(), IpcCheckError> {
        let err = |message: String, path: &Vec<usize>| IpcCheckError { path: path.clone(), rule: p.rule, message };
        let expected = ipc_instance(&p.conclusion, p.rule, p.principal).map_err(|m| err(m, path))?;
        if !p.rule.is_leaf() && expected.is_empty() {
            return Err(err("instance without premises".into(), path));
        }
        let expected: Vec<FormulaSequent> = expected.into_iter().map(|(s, _)| s).collect();
        let given: Vec<FormulaSequent> = p.premises.iter().map(|q| q.conclusion.clone()).collect();
        if !same_multiset(&expected, &given) {
            return Err(err(format!("premises {given:?} do not match the expected {expected:?}"), path));
        }
        for (i, q) in p.premises.iter().enumerate() {
            path.push(i);
            go(q, path)?;
            path.pop();
        }
        Ok(())
    }
    go(p, &mut Vec::new())
}

/// Adds one copy of `f` to `side` of every node that inherits it.
pub fn weaken_formula_proof(p: &FormulaProof, f: &Formula, side: Side) -> FormulaProof {
    let conclusion = with_formula(&p.conclusion, f, side);
    let principal = p.principal.map(|(s, i)| {
        let target = &c_side(&p.conclusion, s)[i];
        (s, c_side(&conclusion, s).iter().position(|x| x == target).expect("principal survives"))
    });
    let keeps: Vec<bool> = match ipc_instance(&p.conclusion, p.rule, p.principal) {
        Ok(inst) => match_order(&inst, &p.premises),
        Err(_) => vec![true; p.premises.len()],
    };
    let premises = p
        .premises
        .iter()
        .zip(keeps)
        .map(|(q, keep)| if side == Side::Left || keep { weaken_formula_proof(q, f, side) } else { q.clone() })
        .collect();
    FormulaProof { rule: p.rule, conclusion, principal, premises }
}

fn match_order(inst: &[(FormulaSequent, bool)], premises: &[FormulaProof]) -> Vec<bool> {
    let mut used = vec![false; inst.len()];
    premises
        .iter()
        .map(|q| {
            let j = (0..inst.len()).find(|&j| !used[j] && inst[j].0 == q.conclusion).expect("checked proof");
            used[j] = true;
            inst[j].1
        })
        .collect()
}

fn with_formula(s: &FormulaSequent, f: &Formula, side: Side) -> FormulaSequent {
    match side {
        Side::Left => FormulaSequent::new(plus(s.antecedent(), &[f]), s.succedent().to_vec()),
        Side::Right => FormulaSequent::new(s.antecedent().to_vec(), plus(s.succedent(), &[f])),
    }
}

#[derive(Default)]
struct Interner {
    items: Vec<Formula>,
    ids: HashMap<Formula, Id>,
}

impl Interner {
    fn id(&mut self, f: &Formula) -> Id {
        if let Some(&id) = self.ids.get(f) {
            return id;
        }
        let id = self.items.len() as Id;
        self.items.push(f.clone());
        self.ids.insert(f.clone(), id);
        id
    }
}

struct Sentential {
    interner: Interner,
    bottom: Id,
    cache: HashMap<(Id, Side), Rc<Vec<Template<IpcRule>>>>,
}

impl Calculus for Sentential {
    type Step = IpcRule;

    fn close(&mut self, goal: &Goal) -> Option<IpcRule> {
        if goal.left.contains(&self.bottom) {
            return Some(IpcRule::BotL);
        }
        let atomic = |id: &Id| matches!(self.interner.items[*id as usize], Formula::Var(_));
        goal.left.iter().filter(|id| atomic(id)).find(|id| goal.right.contains(id)).map(|_| IpcRule::Axiom)
    }

    fn templates(&mut self, id: Id, side: Side) -> Rc<Vec<Template<IpcRule>>> {
        if let Some(t) = self.cache.get(&(id, side)) {
            return t.clone();
        }
        let f = self.interner.items[id as usize].clone();
        let keep = |add_left: Vec<Id>, add_right: Vec<Id>| PremiseShape {
            keep_principal: false,
            keep_context: true,
            add_left,
            add_right,
        };
        let mut out = Vec::new();
        match (side, &f) {
            (Side::Left, Formula::And(a, b)) => {
                let (a, b) = (self.interner.id(a), self.interner.id(b));
                out.push(Template { step: IpcRule::AndL, invertible: true, premises: vec![keep(vec![a, b], vec![])] });
            }
            (Side::Left, Formula::Or(a, b)) => {
                let (a, b) = (self.interner.id(a), self.interner.id(b));
                out.push(Template {
                    step: IpcRule::OrL,
                    invertible: true,
                    premises: vec![keep(vec![a], vec![]), keep(vec![b], vec![])],
                });
            }
            (Side::Left, Formula::Implies(a, b)) => {
                let (a, b) = (self.interner.id(a), self.interner.id(b));
                out.push(Template {
                    step: IpcRule::ImpL,
                    invertible: false,
                    premises: vec![
                        PremiseShape { keep_principal: true, keep_context: false, add_left: vec![], add_right: vec![a] },
                        keep(vec![b], vec![]),
                    ],
                });
            }
            (Side::Right, Formula::And(a, b)) => {
                let (a, b) = (self.interner.id(a), self.interner.id(b));
                out.push(Template {
                    step: IpcRule::AndR,
                    invertible: true,
                    premises: vec![keep(vec![], vec![a]), keep(vec![], vec![b])],
                });
            }
            (Side::Right, Formula::Or(a, b)) => {
                let (a, b) = (self.interner.id(a), self.interner.id(b));
                out.push(Template { step: IpcRule::OrR, invertible: true, premises: vec![keep(vec![], vec![a, b])] });
            }
            (Side::Right, Formula::Implies(a, b)) => {
                let (a, b) = (self.interner.id(a), self.interner.id(b));
                out.push(Template {
                    step: IpcRule::ImpR,
                    invertible: false,
                    premises: vec![PremiseShape {
                        keep_principal: false,
                        keep_context: false,
                        add_left: vec![a],
                        add_right: vec![b],
                    }],
                });
            }
            _ => {}
        }
        let out = Rc::new(out);
        self.cache.insert((id, side), out.clone());
        out
    }
}

/// Decides a formula sequent, returning a checkable proof when provable.
pub fn prove_ipc(s: &FormulaSequent) -> Result<IpcOutcome, BudgetExhausted> {
    prove_ipc_with_budget(s, IPC_BUDGET)
}

pub fn prove_ipc_with_budget(s: &FormulaSequent, budget: usize) -> Result<IpcOutcome, BudgetExhausted> {
    let s = s.clone();
    with_big_stack(move || {
        let (mut engine, goal) = engine_for(&s, budget);
        match engine.prove(&goal, usize::MAX)? {
            Outcome::Proved(d) => Ok(IpcOutcome::Proved(build(&d, &engine.calc.interner.items, &s))),
            Outcome::Refuted => Ok(IpcOutcome::Refuted),
            Outcome::TooLarge { .. } => unreachable!("no size limit"),
        }
    })
}

/// Provability alone; no proof tree is built.
pub fn decide_ipc(s: &FormulaSequent, budget: usize) -> Result<bool, BudgetExhausted> {
    let s = s.clone();
    with_big_stack(move || {
        let (mut engine, goal) = engine_for(&s, budget);
        engine.decide(&goal)
    })
}

fn engine_for(s: &FormulaSequent, budget: usize) -> (Engine<Sentential>, Goal) {
    let mut interner = Interner::default();
    let bottom = interner.id(&Formula::Bottom);
    let left = s.antecedent().iter().map(|f| interner.id(f)).collect();
    let right = s.succedent().iter().map(|f| interner.id(f)).collect();
    let goal = Goal::new(left, right);
    (Engine::new(Sentential { interner, bottom, cache: HashMap::new() }, budget), goal)
}

fn covers(target: &FormulaSequent, goal: &Goal, items: &[Formula]) -> bool {
    let has = |side: Side, ids: &[Id]| ids.iter().all(|&i| c_side(target, side).contains(&items[i as usize]));
    has(Side::Left, &goal.left) && has(Side::Right, &goal.right)
}

/// Rebuilds the derivation, which ran on sets, as a proof of `target`;
/// duplicates and extra formulas ride along as in weakening.
fn build(d: &Derivation<IpcRule>, items: &[Formula], target: &FormulaSequent) -> FormulaProof {
    let conclusion = target.clone();
    let Some((side, id)) = d.principal else {
        return FormulaProof { rule: d.step, conclusion, principal: None, premises: Vec::new() };
    };
    let principal = &items[id as usize];
    let idx = c_side(&conclusion, side).iter().position(|f| f == principal).expect("principal in goal");
    let expected = ipc_instance(&conclusion, d.step, Some((side, idx))).expect("search follows the rules");
    let premises = expected
        .iter()
        .map(|(want, _)| {
            let child = d.premises.iter().find(|c| covers(want, &c.goal, items)).expect("premise derived by search");
            build(child, items, want)
        })
        .collect();
    FormulaProof { rule: d.step, conclusion, principal: Some((side, idx)), premises }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn seq(l: &[&str], r: &[&str]) -> FormulaSequent {
        let p = |xs: &[&str]| xs.iter().map(|x| parse_formula(x).unwrap()).collect();
        FormulaSequent::new(p(l), p(r))
    }

    fn proved(s: &FormulaSequent) -> FormulaProof {
        match prove_ipc(s).unwrap() {
            IpcOutcome::Proved(p) => {
                check_ipc_proof(&p).unwrap();
                assert_eq!(&p.conclusion, s);
                p
            }
            IpcOutcome::Refuted => panic!("{s} should be provable"),
        }
    }

    fn refuted(s: &FormulaSequent) {
        assert!(matches!(prove_ipc(s).unwrap(), IpcOutcome::Refuted), "{s} should be refuted");
    }

    #[test]
    fn modus_ponens() {
        proved(&seq(&["a", "a -> b"], &["b"]));
    }

    #[test]
    fn classical_principles_fail() {
        refuted(&seq(&[], &["a v ~a"]));
        refuted(&seq(&[], &["((a -> b) -> a) -> a"]));
        refuted(&seq(&[], &["~~a -> a"]));
        refuted(&seq(&["~(a & ~b)"], &["a -> b"]));
    }

    #[test]
    fn intuitionistic_theorems() {
        proved(&seq(&[], &["~~(a v ~a)"]));
        proved(&seq(&[], &["a -> ~~a"]));
        proved(&seq(&[], &["~~~a -> ~a"]));
        proved(&seq(&["a v b"], &["b v a"]));
        proved(&seq(&[], &["T"]));
        proved(&seq(&["F"], &[]));
        proved(&seq(&["a", "a"], &["a", "a"]));
        refuted(&seq(&[], &["a", "a -> b"]));
        proved(&seq(&["(a -> b) -> c", "b"], &["c"]));
    }

    #[test]
    fn checker_rejects_bad_nodes() {
        let s = seq(&["a & b"], &["a & b"]);
        let bad = FormulaProof { rule: IpcRule::Axiom, conclusion: s, principal: None, premises: vec![] };
        assert!(check_ipc_proof(&bad).is_err());

        // ImpR whose premise keeps the extra succedent formula c
        let conclusion = seq(&[], &["a -> a", "c"]);
        let premise = seq(&["a"], &["a", "c"]);
        let leaf = FormulaProof { rule: IpcRule::Axiom, conclusion: premise, principal: None, premises: vec![] };
        let idx = conclusion.succedent().iter().position(|f| matches!(f, Formula::Implies(..))).unwrap();
        let bad = FormulaProof {
            rule: IpcRule::ImpR,
            conclusion,
            principal: Some((Side::Right, idx)),
            premises: vec![leaf],
        };
        assert!(check_ipc_proof(&bad).is_err());
    }
}
