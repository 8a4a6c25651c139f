//! Memoized AND-OR backward search over set-normalized sequents.
//!
//! Formulas or diagrams are interned to integer ids by the calculus. A goal
//! is provable iff it has a derivation that does not rely on itself; a goal
//! met again on the current path counts as failed for that path. Failures
//! that rest on such an assumption are kept as tentative, tagged with the
//! shallowest stack level they depend on, and are discarded or made final
//! when that level is resolved.

use std::collections::{HashMap, HashSet};
use std::rc::Rc;

use crate::diagram::Side;

pub(crate) type Id = u32;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) struct Goal {
    pub left: Vec<Id>,
    pub right: Vec<Id>,
}

impl Goal {
    pub fn new(mut left: Vec<Id>, mut right: Vec<Id>) -> Goal {
        left.sort_unstable();
        left.dedup();
        right.sort_unstable();
        right.dedup();
        Goal { left, right }
    }
}

/// The shape of one premise relative to the conclusion.
#[derive(Clone, Debug, Default)]
pub(crate) struct PremiseShape {
    /// The principal stays in the premise.
    pub keep_principal: bool,
    /// The succedent context stays in the premise.
    pub keep_context: bool,
    pub add_left: Vec<Id>,
    pub add_right: Vec<Id>,
}

#[derive(Clone, Debug)]
pub(crate) struct Template<S> {
    pub step: S,
    pub invertible: bool,
    pub premises: Vec<PremiseShape>,
}

pub(crate) trait Calculus {
    type Step: Clone;

    /// A leaf step closing the goal, if any.
    fn close(&mut self, goal: &Goal) -> Option<Self::Step>;

    /// Backward rule instances with `id` principal on `side`, invertible ones first.
    fn templates(&mut self, id: Id, side: Side) -> Rc<Vec<Template<Self::Step>>>;
}

pub(crate) fn premise_goal(goal: &Goal, side: Side, principal: Id, shape: &PremiseShape) -> Goal {
    let mut left = goal.left.clone();
    let mut right = if shape.keep_context { goal.right.clone() } else { Vec::new() };
    if !shape.keep_principal {
        let v = match side {
            Side::Left => &mut left,
            Side::Right => &mut right,
        };
        v.retain(|&x| x != principal);
    }
    left.extend_from_slice(&shape.add_left);
    right.extend_from_slice(&shape.add_right);
    Goal::new(left, right)
}

#[derive(Clone, Debug)]
pub(crate) struct Node<S> {
    pub step: S,
    pub principal: Option<(Side, Id)>,
    pub premises: Vec<Goal>,
}

/// A derivation tree over goals, read off the proved table.
#[derive(Clone, Debug)]
pub(crate) struct Derivation<S> {
    pub goal: Goal,
    pub step: S,
    pub principal: Option<(Side, Id)>,
    pub premises: Vec<Derivation<S>>,
}

pub(crate) enum Outcome<S> {
    Proved(Derivation<S>),
    /// Provable, but the smallest derivation found unfolds to `nodes` nodes.
    TooLarge { nodes: u128 },
    Refuted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("search budget of {0} goals exhausted")]
pub struct BudgetExhausted(pub usize);

const DEFINITIVE: usize = usize::MAX;

enum Status<S> {
    Proved,
    /// Failure depending on the stack level given, or `DEFINITIVE`.
    Failed(usize),
    Found(Node<S>),
}

pub(crate) struct Engine<C: Calculus> {
    pub calc: C,
    proved: HashMap<Goal, Node<C::Step>>,
    failed: HashSet<Goal>,
    tentative: HashMap<Goal, usize>,
    tentative_at: Vec<Vec<Goal>>,
    on_stack: HashMap<Goal, usize>,
    expanded: usize,
    budget: usize,
}

impl<C: Calculus> Engine<C> {
    pub fn new(calc: C, budget: usize) -> Self {
        Self {
            calc,
            proved: HashMap::new(),
            failed: HashSet::new(),
            tentative: HashMap::new(),
            tentative_at: Vec::new(),
            on_stack: HashMap::new(),
            expanded: 0,
            budget,
        }
    }

    /// Provability of `goal` without reading off a derivation.
    pub fn decide(&mut self, goal: &Goal) -> Result<bool, BudgetExhausted> {
        self.solve(goal, 0)
    }

    /// A smallest derivation of `goal` the proved table allows, unless its
    /// tree has more than `max_nodes` nodes.
    pub fn prove(&mut self, goal: &Goal, max_nodes: usize) -> Result<Outcome<C::Step>, BudgetExhausted> {
        if !self.solve(goal, 0)? {
            return Ok(Outcome::Refuted);
        }
        let nodes = self.smallest_proofs()[goal];
        if nodes > max_nodes as u128 {
            return Ok(Outcome::TooLarge { nodes });
        }
        Ok(Outcome::Proved(self.derivation(goal)))
    }

    fn solve(&mut self, goal: &Goal, depth: usize) -> Result<bool, BudgetExhausted> {
        match self.visit(goal, depth)? {
            Status::Proved | Status::Found(_) => Ok(true),
            Status::Failed(_) => Ok(false),
        }
    }

    fn visit(&mut self, goal: &Goal, depth: usize) -> Result<Status<C::Step>, BudgetExhausted> {
        if self.proved.contains_key(goal) {
            return Ok(Status::Proved);
        }
        if self.failed.contains(goal) {
            return Ok(Status::Failed(DEFINITIVE));
        }
        if let Some(&level) = self.on_stack.get(goal) {
            return Ok(Status::Failed(level));
        }
        if let Some(&level) = self.tentative.get(goal) {
            return Ok(Status::Failed(level));
        }
        self.expanded += 1;
        if self.expanded > self.budget {
            return Err(BudgetExhausted(self.budget));
        }
        self.on_stack.insert(goal.clone(), depth);
        if self.tentative_at.len() <= depth {
            self.tentative_at.resize_with(depth + 1, Vec::new);
        }
        let outcome = self.expand(goal, depth);
        self.on_stack.remove(goal);
        let outcome = outcome?;
        let pending = std::mem::take(&mut self.tentative_at[depth]);
        match outcome {
            Status::Found(node) => {
                for g in pending {
                    self.tentative.remove(&g);
                }
                self.proved.insert(goal.clone(), node);
                Ok(Status::Proved)
            }
            Status::Failed(level) if level >= depth => {
                for g in pending {
                    self.tentative.remove(&g);
                    self.failed.insert(g);
                }
                self.failed.insert(goal.clone());
                Ok(Status::Failed(DEFINITIVE))
            }
            Status::Failed(level) => {
                for g in &pending {
                    self.tentative.insert(g.clone(), level);
                }
                self.tentative_at[level].extend(pending);
                self.tentative.insert(goal.clone(), level);
                self.tentative_at[level].push(goal.clone());
                Ok(Status::Failed(level))
            }
            Status::Proved => unreachable!("expand reports nodes"),
        }
    }

    /// Tries all premises; returns the shallowest dependency of a failure.
    fn try_all(&mut self, premises: &[Goal], depth: usize) -> Result<Option<usize>, BudgetExhausted> {
        for p in premises {
            if let Status::Failed(level) = self.visit(p, depth + 1)? {
                return Ok(Some(level));
            }
        }
        Ok(None)
    }

    fn expand(&mut self, goal: &Goal, depth: usize) -> Result<Status<C::Step>, BudgetExhausted> {
        if let Some(step) = self.calc.close(goal) {
            return Ok(Status::Found(Node { step, principal: None, premises: Vec::new() }));
        }
        let principals: Vec<(Side, Id)> = goal
            .left
            .iter()
            .map(|&id| (Side::Left, id))
            .chain(goal.right.iter().map(|&id| (Side::Right, id)))
            .collect();

        // Invertible rules lose nothing, so one is committed to. Branching
        // ones go last, or every branch would repeat the remaining work.
        let mut invertible: Option<(Side, Id, Rc<Vec<Template<C::Step>>>, usize)> = None;
        for &(side, id) in &principals {
            let templates = self.calc.templates(id, side);
            if let Some(i) = templates.iter().position(|t| t.invertible) {
                let width = templates[i].premises.len();
                if invertible.as_ref().map_or(true, |(_, _, ts, j)| width < ts[*j].premises.len()) {
                    invertible = Some((side, id, templates, i));
                    if width <= 1 {
                        break;
                    }
                }
            }
        }
        if let Some((side, id, templates, i)) = invertible {
            let t = &templates[i];
            let premises: Vec<Goal> = t.premises.iter().map(|s| premise_goal(goal, side, id, s)).collect();
            return Ok(match self.try_all(&premises, depth)? {
                None => Status::Found(Node { step: t.step.clone(), principal: Some((side, id)), premises }),
                Some(level) => Status::Failed(level),
            });
        }

        let mut low = DEFINITIVE;
        for &(side, id) in &principals {
            let templates = self.calc.templates(id, side);
            for t in templates.iter() {
                let premises: Vec<Goal> = t.premises.iter().map(|s| premise_goal(goal, side, id, s)).collect();
                match self.try_all(&premises, depth)? {
                    None => {
                        return Ok(Status::Found(Node { step: t.step.clone(), principal: Some((side, id)), premises }))
                    }
                    Some(level) => low = low.min(level),
                }
            }
        }
        Ok(Status::Failed(low))
    }

    /// Rechooses the step at every proved goal so that the unfolded tree is
    /// as small as the proved table allows. Relaxation to a fixed point; at
    /// the fixed point each premise is strictly smaller than its conclusion,
    /// so the choice stays well-founded.
    fn smallest_proofs(&mut self) -> HashMap<Goal, u128> {
        let goals: Vec<Goal> = self.proved.keys().cloned().collect();
        let mut size: HashMap<Goal, u128> = HashMap::new();
        // first estimate: the derivation found by the search
        fn measure<S>(g: &Goal, proved: &HashMap<Goal, Node<S>>, size: &mut HashMap<Goal, u128>) -> u128 {
            if let Some(&s) = size.get(g) {
                return s;
            }
            let node = &proved[g];
            let s = node.premises.iter().fold(1u128, |acc, p| acc.saturating_add(measure(p, proved, size)));
            size.insert(g.clone(), s);
            s
        }
        for g in &goals {
            measure(g, &self.proved, &mut size);
        }
        let mut changed = true;
        while changed {
            changed = false;
            for g in &goals {
                if self.proved[g].principal.is_none() {
                    continue;
                }
                let current = size[g];
                let principals: Vec<(Side, Id)> = g
                    .left
                    .iter()
                    .map(|&id| (Side::Left, id))
                    .chain(g.right.iter().map(|&id| (Side::Right, id)))
                    .collect();
                let mut best: Option<(u128, Node<C::Step>)> = None;
                if let Some(step) = self.calc.close(g) {
                    best = Some((1, Node { step, principal: None, premises: Vec::new() }));
                }
                for (side, id) in principals {
                    if best.as_ref().is_some_and(|(s, _)| *s == 1) {
                        break;
                    }
                    for t in self.calc.templates(id, side).iter() {
                        let premises: Vec<Goal> = t.premises.iter().map(|s| premise_goal(g, side, id, s)).collect();
                        let Some(total) = premises
                            .iter()
                            .try_fold(1u128, |acc, p| size.get(p).map(|s| acc.saturating_add(*s)))
                        else {
                            continue;
                        };
                        if total < best.as_ref().map_or(current, |(s, _)| *s) {
                            best = Some((total, Node { step: t.step.clone(), principal: Some((side, id)), premises }));
                        }
                    }
                }
                if let Some((s, node)) = best {
                    if s < current {
                        size.insert(g.clone(), s);
                        self.proved.insert(g.clone(), node);
                        changed = true;
                    }
                }
            }
        }
        size
    }

    fn derivation(&self, goal: &Goal) -> Derivation<C::Step> {
        let node = &self.proved[goal];
        Derivation {
            goal: goal.clone(),
            step: node.step.clone(),
            principal: node.principal,
            premises: node.premises.iter().map(|p| self.derivation(p)).collect(),
        }
    }
}

/// Runs `f` on a thread with a large stack, since the search recurses once
/// per goal on the current path.
pub(crate) fn with_big_stack<T: Send + 'static>(f: impl FnOnce() -> T + Send + 'static) -> T {
    std::thread::Builder::new()
        .stack_size(512 << 20)
        .spawn(f)
        .expect("spawn search thread")
        .join()
        .unwrap_or_else(|e| std::panic::resume_unwind(e))
}
