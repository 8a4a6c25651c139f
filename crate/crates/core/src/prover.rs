//! Backward rule enumeration and the decision procedure for diagram sequents.

use std::collections::{BTreeSet, HashMap};
use std::rc::Rc;

use thiserror::Error;

use crate::diagram::{Diagram, Kind, Sequent, Side, UnitaryDiagram, Zone};
use crate::formula::canon_sequent;
use crate::ipc::decide_ipc;
use crate::proof::{rule_instance, Aux, DiagProof, RuleName};
use crate::search::{with_big_stack, BudgetExhausted, Calculus, Derivation, Engine, Goal, Id, Outcome, PremiseShape, Template};

/// Largest number of distinct contours `prove` accepts.
pub const MAX_PROVER_CONTOURS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProveError {
    #[error("{count} distinct contours exceed the prover cap of {MAX_PROVER_CONTOURS}")]
    TooManyContours { count: usize },
    #[error(transparent)]
    Budget(#[from] BudgetExhausted),
    #[error("provable, but the proof tree has {nodes} nodes, above the limit of {limit}")]
    ProofTooLarge { nodes: u128, limit: usize },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

#[derive(Debug, Clone)]
pub struct ProveOptions {
    /// Let the search use the reduction rules on pure Euler diagrams.
    pub with_reduce: bool,
    /// Limit on expanded goals.
    pub budget: usize,
    /// Largest proof tree, in nodes, that `prove` will materialize. The
    /// search shares subproofs; trees can be exponentially larger.
    pub max_proof_nodes: usize,
}

impl Default for ProveOptions {
    fn default() -> Self {
        Self { with_reduce: false, budget: 2_000_000, max_proof_nodes: 1_000_000 }
    }
}

#[derive(Debug, Clone)]
pub enum ProofOutcome {
    Proved(DiagProof),
    Refuted,
}

impl ProofOutcome {
    pub fn is_proved(&self) -> bool {
        matches!(self, ProofOutcome::Proved(_))
    }

    pub fn proof(&self) -> Option<&DiagProof> {
        match self {
            ProofOutcome::Proved(p) => Some(p),
            ProofOutcome::Refuted => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    Proved,
    Refuted,
}

/// One backward rule instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleApplication {
    pub rule: RuleName,
    pub principal: Option<usize>,
    pub aux: Aux,
    pub premises: Vec<Sequent>,
}

fn least_peel(zones: &BTreeSet<Zone>) -> Aux {
    let least = zones.iter().next().expect("nonempty").clone();
    let rest = zones.iter().skip(1).cloned().collect();
    Aux::Cover([least].into(), rest)
}

/// Candidate rules for a principal diagram, with their data; separation
/// rules peel the least zone. Instances that would leave the sequent
/// unchanged (decomposing a literal into itself) are omitted.
fn candidates(d: &Diagram, side: Side) -> Vec<(RuleName, Aux)> {
    let pick = |l: RuleName, r: RuleName| if side == Side::Left { l } else { r };
    let u = match d {
        Diagram::And(..) => return vec![(pick(RuleName::AndL, RuleName::AndR), Aux::None)],
        Diagram::Or(..) => return vec![(pick(RuleName::OrL, RuleName::OrR), Aux::None)],
        Diagram::Implies(..) => return vec![(pick(RuleName::ImpL, RuleName::ImpR), Aux::None)],
        Diagram::Unitary(u) => u,
    };
    let mut out = Vec::new();
    match u.kind() {
        Kind::Venn => {
            if let Some((_, positive)) = u.as_literal() {
                if !positive {
                    out.push((pick(RuleName::LitL, RuleName::LitR), Aux::None));
                }
            } else if u.shaded_zones().len() > 1 {
                out.push((pick(RuleName::SepL, RuleName::SepR), least_peel(u.shaded_zones())));
            } else if u.shaded_zones().len() == 1 {
                out.push((pick(RuleName::SingDecL, RuleName::SingDecR), Aux::None));
            }
        }
        Kind::PureEuler => {
            let reducible = u.reducible_contours().expect("pure Euler");
            if !reducible.is_empty() {
                out.push((pick(RuleName::ReduceL, RuleName::ReduceR), Aux::Contours(reducible.into_iter().collect())));
            }
            let missing = u.missing_zones();
            if missing.len() > 1 {
                out.push((pick(RuleName::MzSepL, RuleName::MzSepR), least_peel(&missing)));
            } else if missing.len() == 1 {
                out.push((pick(RuleName::ImpDecL, RuleName::ImpDecR), Aux::None));
            }
        }
        Kind::EulerVenn => out.push((pick(RuleName::DetL, RuleName::DetR), Aux::None)),
    }
    out
}

/// Every backward rule instance applicable to `s`, leaves first.
pub fn applicable_rules(s: &Sequent) -> Vec<RuleApplication> {
    let mut out = Vec::new();
    for rule in [RuleName::Axiom, RuleName::BotL, RuleName::TopR] {
        if rule_instance(s, rule, None, &Aux::None).is_ok() {
            out.push(RuleApplication { rule, principal: None, aux: Aux::None, premises: Vec::new() });
        }
    }
    for side in [Side::Left, Side::Right] {
        let items = s.side(side);
        for (i, d) in items.iter().enumerate() {
            if i > 0 && items[i - 1] == *d {
                continue;
            }
            for (rule, aux) in candidates(d, side) {
                if let Ok(specs) = rule_instance(s, rule, Some(i), &aux) {
                    let premises: Vec<Sequent> = specs.into_iter().map(|p| p.sequent).collect();
                    if premises.iter().any(|p| p == s) {
                        continue;
                    }
                    out.push(RuleApplication { rule, principal: Some(i), aux, premises });
                }
            }
        }
    }
    out
}

#[derive(Clone, Copy, Default)]
struct Flags {
    positive_literal: bool,
    falsum: bool,
    verum: bool,
}

struct Dev {
    items: Vec<Diagram>,
    ids: HashMap<Diagram, Id>,
    flags: Vec<Flags>,
    cache: HashMap<(Id, Side), Rc<Vec<Template<(RuleName, Aux)>>>>,
    with_reduce: bool,
}

impl Dev {
    fn new(with_reduce: bool) -> Self {
        Self { items: Vec::new(), ids: HashMap::new(), flags: Vec::new(), cache: HashMap::new(), with_reduce }
    }

    fn id(&mut self, d: &Diagram) -> Id {
        if let Some(&id) = self.ids.get(d) {
            return id;
        }
        let id = self.items.len() as Id;
        let flags = match d.as_unitary() {
            Some(u) => Flags {
                positive_literal: u.is_positive_literal(),
                falsum: u.is_falsum_shape(),
                verum: u.is_verum_shape(),
            },
            None => Flags::default(),
        };
        self.items.push(d.clone());
        self.flags.push(flags);
        self.ids.insert(d.clone(), id);
        id
    }

    fn ids(&mut self, ds: impl IntoIterator<Item = Diagram>) -> Vec<Id> {
        ds.into_iter().map(|d| self.id(&d)).collect()
    }

    fn build_templates(&mut self, d: &Diagram, side: Side) -> Vec<Template<(RuleName, Aux)>> {
        let ext = |add_left: Vec<Id>, add_right: Vec<Id>| PremiseShape {
            keep_principal: false,
            keep_context: true,
            add_left,
            add_right,
        };
        let restricted = |keep_principal: bool, add_left: Vec<Id>, add_right: Vec<Id>| PremiseShape {
            keep_principal,
            keep_context: false,
            add_left,
            add_right,
        };
        let mut out = Vec::new();
        for (rule, aux) in candidates(d, side) {
            let premises = match (rule, d) {
                (RuleName::AndL, Diagram::And(a, b)) => vec![ext(self.ids([(**a).clone(), (**b).clone()]), vec![])],
                (RuleName::OrL, Diagram::Or(a, b)) => {
                    vec![ext(vec![self.id(a)], vec![]), ext(vec![self.id(b)], vec![])]
                }
                (RuleName::ImpL, Diagram::Implies(a, b)) => {
                    vec![restricted(true, vec![], vec![self.id(a)]), ext(vec![self.id(b)], vec![])]
                }
                (RuleName::AndR, Diagram::And(a, b)) => {
                    vec![ext(vec![], vec![self.id(a)]), ext(vec![], vec![self.id(b)])]
                }
                (RuleName::OrR, Diagram::Or(a, b)) => vec![ext(vec![], self.ids([(**a).clone(), (**b).clone()]))],
                (RuleName::ImpR, Diagram::Implies(a, b)) => {
                    vec![restricted(false, vec![self.id(a)], vec![self.id(b)])]
                }
                (_, Diagram::Unitary(u)) => self.unitary_premises(rule, &aux, u),
                _ => unreachable!("candidates match the connective"),
            };
            if premises.is_empty() {
                continue;
            }
            if !self.with_reduce && matches!(rule, RuleName::ReduceL | RuleName::ReduceR) {
                continue;
            }
            out.push(Template { step: (rule, aux), invertible: rule.is_invertible(), premises });
        }
        out
    }

    fn unitary_premises(&mut self, rule: RuleName, aux: &Aux, u: &UnitaryDiagram) -> Vec<PremiseShape> {
        let ext = |add_left: Vec<Id>, add_right: Vec<Id>| PremiseShape {
            keep_principal: false,
            keep_context: true,
            add_left,
            add_right,
        };
        let restricted = |keep_principal: bool, add_left: Vec<Id>, add_right: Vec<Id>| PremiseShape {
            keep_principal,
            keep_context: false,
            add_left,
            add_right,
        };
        let lit = |c, pos| Diagram::literal(c, pos);
        match rule {
            RuleName::LitL | RuleName::LitR => {
                let (c, _) = u.as_literal().expect("literal");
                let pos = self.id(&lit(c, true));
                if rule == RuleName::LitL {
                    vec![restricted(true, vec![], vec![pos])]
                } else {
                    vec![restricted(false, vec![pos], vec![])]
                }
            }
            RuleName::SepL | RuleName::SepR => {
                let Aux::Cover(a, b) = aux else { unreachable!("peel data") };
                let d1 = self.id(&Diagram::from(u.with_shading(a.clone())));
                let d2 = self.id(&Diagram::from(u.with_shading(b.clone())));
                if rule == RuleName::SepL {
                    vec![ext(vec![d1], vec![]), ext(vec![d2], vec![])]
                } else {
                    vec![ext(vec![], vec![d1, d2])]
                }
            }
            RuleName::SingDecL | RuleName::SingDecR => {
                let z = u.shaded_zones().iter().next().expect("one zone").clone();
                let lits: Vec<Diagram> = z
                    .in_set()
                    .iter()
                    .map(|c| lit(c, true))
                    .chain(z.out_set().iter().map(|c| lit(c, false)))
                    .collect();
                let lits = self.ids(lits);
                if rule == RuleName::SingDecL {
                    vec![ext(lits, vec![])]
                } else {
                    lits.into_iter().map(|l| ext(vec![], vec![l])).collect()
                }
            }
            RuleName::ReduceL | RuleName::ReduceR => {
                let Aux::Contours(cs) = aux else { unreachable!("contour data") };
                let reduced: Vec<Diagram> = cs.iter().map(|c| Diagram::from(u.reduce(c).expect("pure Euler"))).collect();
                let reduced = self.ids(reduced);
                if rule == RuleName::ReduceL {
                    vec![ext(reduced, vec![])]
                } else {
                    reduced.into_iter().map(|r| ext(vec![], vec![r])).collect()
                }
            }
            RuleName::MzSepL | RuleName::MzSepR => {
                let Aux::Cover(a, b) = aux else { unreachable!("peel data") };
                let d1 = self.id(&Diagram::from(u.with_missing(a)));
                let d2 = self.id(&Diagram::from(u.with_missing(b)));
                if rule == RuleName::MzSepL {
                    vec![ext(vec![d1, d2], vec![])]
                } else {
                    vec![ext(vec![], vec![d1]), ext(vec![], vec![d2])]
                }
            }
            RuleName::ImpDecL | RuleName::ImpDecR => {
                let z = u.missing_zones().into_iter().next().expect("one zone");
                let ins = self.ids(z.in_set().iter().map(|c| lit(c, true)).collect::<Vec<_>>());
                let outs = self.ids(z.out_set().iter().map(|c| lit(c, true)).collect::<Vec<_>>());
                if rule == RuleName::ImpDecL {
                    ins.into_iter()
                        .map(|n| restricted(true, vec![], vec![n]))
                        .chain(outs.into_iter().map(|o| ext(vec![o], vec![])))
                        .collect()
                } else {
                    vec![restricted(false, ins, outs)]
                }
            }
            RuleName::DetL | RuleName::DetR => {
                let e = self.id(&Diagram::from(u.euler_part().expect("Euler-Venn")));
                let v = self.id(&Diagram::from(u.venn_part().expect("Euler-Venn")));
                if rule == RuleName::DetL {
                    vec![restricted(true, vec![], vec![e]), ext(vec![v], vec![])]
                } else {
                    vec![restricted(false, vec![e], vec![v])]
                }
            }
            _ => unreachable!("connective rules are handled by the caller"),
        }
    }
}

impl Calculus for Dev {
    type Step = (RuleName, Aux);

    fn close(&mut self, goal: &Goal) -> Option<(RuleName, Aux)> {
        let f = |id: &Id| self.flags[*id as usize];
        if goal.left.iter().any(|id| f(id).positive_literal && goal.right.contains(id)) {
            return Some((RuleName::Axiom, Aux::None));
        }
        if goal.left.iter().any(|id| f(id).falsum) {
            return Some((RuleName::BotL, Aux::None));
        }
        if goal.right.iter().any(|id| f(id).verum) {
            return Some((RuleName::TopR, Aux::None));
        }
        None
    }

    fn templates(&mut self, id: Id, side: Side) -> Rc<Vec<Template<(RuleName, Aux)>>> {
        if let Some(t) = self.cache.get(&(id, side)) {
            return t.clone();
        }
        let d = self.items[id as usize].clone();
        let t = Rc::new(self.build_templates(&d, side));
        self.cache.insert((id, side), t.clone());
        t
    }
}

fn contour_cap(s: &Sequent) -> Result<(), ProveError> {
    let count = s.contours().len();
    if count > MAX_PROVER_CONTOURS {
        return Err(ProveError::TooManyContours { count });
    }
    Ok(())
}

/// Decides `s` with the default options.
pub fn prove(s: &Sequent) -> Result<ProofOutcome, ProveError> {
    prove_with(s, &ProveOptions::default())
}

/// Decides `s`, returning a checkable proof of exactly `s` when provable.
pub fn prove_with(s: &Sequent, options: &ProveOptions) -> Result<ProofOutcome, ProveError> {
    contour_cap(s)?;
    let s = s.clone();
    let options = options.clone();
    with_big_stack(move || {
        let (mut engine, goal) = engine_for(&s, &options);
        match engine.prove(&goal, options.max_proof_nodes)? {
            Outcome::Proved(d) => Ok(ProofOutcome::Proved(build(&d, &engine.calc, &s)?)),
            Outcome::Refuted => Ok(ProofOutcome::Refuted),
            Outcome::TooLarge { nodes } => Err(ProveError::ProofTooLarge { nodes, limit: options.max_proof_nodes }),
        }
    })
}

/// Decides `s` with the default options, without building a proof.
pub fn decide(s: &Sequent) -> Result<Decision, ProveError> {
    decide_with(s, &ProveOptions::default())
}

/// Decides `s` by the same search as [`prove_with`]; `max_proof_nodes` is
/// not consulted since no tree is built.
pub fn decide_with(s: &Sequent, options: &ProveOptions) -> Result<Decision, ProveError> {
    contour_cap(s)?;
    let s = s.clone();
    let options = options.clone();
    with_big_stack(move || {
        let (mut engine, goal) = engine_for(&s, &options);
        Ok(if engine.decide(&goal)? { Decision::Proved } else { Decision::Refuted })
    })
}

fn engine_for(s: &Sequent, options: &ProveOptions) -> (Engine<Dev>, Goal) {
    let mut dev = Dev::new(options.with_reduce);
    let left = dev.ids(s.antecedent().iter().cloned());
    let right = dev.ids(s.succedent().iter().cloned());
    let goal = Goal::new(left, right);
    (Engine::new(dev, options.budget), goal)
}

fn covers(target: &Sequent, goal: &Goal, items: &[Diagram]) -> bool {
    let has = |side: Side, ids: &[Id]| ids.iter().all(|&i| target.side(side).contains(&items[i as usize]));
    has(Side::Left, &goal.left) && has(Side::Right, &goal.right)
}

/// `s` with every diagram swapped for the search's shared copy.
fn shared(s: Sequent, dev: &Dev) -> Sequent {
    let swap = |ds: &[Diagram]| -> Vec<Diagram> {
        ds.iter().map(|d| dev.ids.get(d).map_or_else(|| d.clone(), |&i| dev.items[i as usize].clone())).collect()
    };
    Sequent::new(swap(s.antecedent()), swap(s.succedent()))
}

/// Rebuilds the derivation as a proof of `target`, whose sides contain the
/// derivation's goal. Extra diagrams ride along as in weakening, in one pass.
fn build(d: &Derivation<(RuleName, Aux)>, dev: &Dev, target: &Sequent) -> Result<DiagProof, ProveError> {
    let conclusion = target.clone();
    let (rule, aux) = d.step.clone();
    let Some((side, id)) = d.principal else {
        return Ok(DiagProof::leaf(rule, conclusion));
    };
    let principal = &dev.items[id as usize];
    let index = conclusion.side(side).iter().position(|x| x == principal).expect("principal in goal");
    let specs = rule_instance(&conclusion, rule, Some(index), &aux)
        .map_err(|e| ProveError::Internal(format!("search step {rule} rejected: {e}")))?;
    let mut premises = Vec::new();
    for spec in specs {
        let want = shared(spec.sequent, dev);
        let child = d
            .premises
            .iter()
            .find(|c| covers(&want, &c.goal, &dev.items))
            .ok_or_else(|| ProveError::Internal(format!("no derivation for premise {want}")))?;
        premises.push(build(child, dev, &want)?);
    }
    Ok(DiagProof { rule, conclusion, principal: Some(index), aux, premises })
}

/// Decides `s` through the canonical translation and the sentential prover.
pub fn prove_via_oracle(s: &Sequent) -> Result<Decision, ProveError> {
    contour_cap(s)?;
    match decide_ipc(&canon_sequent(s), ProveOptions::default().budget)? {
        true => Ok(Decision::Proved),
        false => Ok(Decision::Refuted),
    }
}
