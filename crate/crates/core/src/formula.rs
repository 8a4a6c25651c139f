//! Intuitionistic propositional formulas and the canonical translation of
//! diagrams into them.

use std::fmt;

use crate::diagram::{ContourName, Diagram, Kind, Sequent, UnitaryDiagram, Zone};

/// Formulas over ⊥, variables, ∧, ∨ and ⇒. `⊤` and `¬` are derived.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Bottom,
    Var(ContourName),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn var(c: &ContourName) -> Formula {
        Formula::Var(c.clone())
    }

    pub fn top() -> Formula {
        Formula::implies(Formula::Bottom, Formula::Bottom)
    }

    pub fn not(f: Formula) -> Formula {
        Formula::implies(f, Formula::Bottom)
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn implies(l: Formula, r: Formula) -> Formula {
        Formula::Implies(Box::new(l), Box::new(r))
    }

    pub fn is_top(&self) -> bool {
        matches!(self, Formula::Implies(l, r) if **l == Formula::Bottom && **r == Formula::Bottom)
    }

    /// Right-nested conjunction with `⊤` conjuncts dropped; empty gives `⊤`.
    pub fn conj(items: impl IntoIterator<Item = Formula>) -> Formula {
        let items: Vec<Formula> = items.into_iter().filter(|f| !f.is_top()).collect();
        items.into_iter().rev().reduce(|acc, f| Formula::and(f, acc)).unwrap_or_else(Formula::top)
    }

    /// Right-nested disjunction with `⊥` disjuncts dropped; empty gives `⊥`.
    pub fn disj(items: impl IntoIterator<Item = Formula>) -> Formula {
        let items: Vec<Formula> = items.into_iter().filter(|f| *f != Formula::Bottom).collect();
        items.into_iter().rev().reduce(|acc, f| Formula::or(f, acc)).unwrap_or(Formula::Bottom)
    }

    /// `l ⇒ r`, rewriting `⊤ ⇒ r` to `r`.
    pub fn imp_simplified(l: Formula, r: Formula) -> Formula {
        if l.is_top() {
            r
        } else {
            Formula::implies(l, r)
        }
    }

    pub fn variables(&self) -> std::collections::BTreeSet<ContourName> {
        let mut out = std::collections::BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut std::collections::BTreeSet<ContourName>) {
        match self {
            Formula::Bottom => {}
            Formula::Var(c) => {
                out.insert(c.clone());
            }
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }
}

/// `⋀ in ∧ ⋀ ¬out`.
pub fn canon_zone_shaded(z: &Zone) -> Formula {
    Formula::conj(
        z.in_set().iter().map(Formula::var).chain(z.out_set().iter().map(|c| Formula::not(Formula::var(c)))),
    )
}

/// `⋀ in ⇒ ⋁ out`.
pub fn canon_zone_missing(z: &Zone) -> Formula {
    let ins = Formula::conj(z.in_set().iter().map(Formula::var));
    let outs = Formula::disj(z.out_set().iter().map(Formula::var));
    Formula::imp_simplified(ins, outs)
}

pub fn canon_unitary(d: &UnitaryDiagram) -> Formula {
    match d.kind() {
        Kind::Venn => Formula::disj(d.shaded_zones().iter().map(canon_zone_shaded)),
        Kind::PureEuler => Formula::conj(d.missing_zones().iter().map(canon_zone_missing)),
        Kind::EulerVenn => {
            let e = canon_unitary(&d.euler_part().expect("Euler-Venn"));
            let v = canon_unitary(&d.venn_part().expect("Euler-Venn"));
            Formula::imp_simplified(e, v)
        }
    }
}

/// The canonical formula of a diagram. Connectives between diagrams are
/// translated homomorphically, without simplification.
pub fn canon(d: &Diagram) -> Formula {
    match d {
        Diagram::Unitary(u) => canon_unitary(u),
        Diagram::And(l, r) => Formula::and(canon(l), canon(r)),
        Diagram::Or(l, r) => Formula::or(canon(l), canon(r)),
        Diagram::Implies(l, r) => Formula::implies(canon(l), canon(r)),
    }
}

/// A sequent of formulas over multisets, stored sorted.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FormulaSequent {
    antecedent: Vec<Formula>,
    succedent: Vec<Formula>,
}

impl FormulaSequent {
    pub fn new(mut antecedent: Vec<Formula>, mut succedent: Vec<Formula>) -> Self {
        antecedent.sort();
        succedent.sort();
        Self { antecedent, succedent }
    }

    pub fn antecedent(&self) -> &[Formula] {
        &self.antecedent
    }

    pub fn succedent(&self) -> &[Formula] {
        &self.succedent
    }

    pub fn variables(&self) -> std::collections::BTreeSet<ContourName> {
        let mut out = std::collections::BTreeSet::new();
        for f in self.antecedent.iter().chain(&self.succedent) {
            f.collect_vars(&mut out);
        }
        out
    }
}

/// Translates every diagram of a sequent.
pub fn canon_sequent(s: &Sequent) -> FormulaSequent {
    FormulaSequent::new(s.antecedent().iter().map(canon).collect(), s.succedent().iter().map(canon).collect())
}

fn prec(f: &Formula) -> u8 {
    match f {
        Formula::Implies(l, r) if **r == Formula::Bottom && **l != Formula::Bottom => 4,
        _ if f.is_top() => 5,
        Formula::Implies(..) => 1,
        Formula::Or(..) => 2,
        Formula::And(..) => 3,
        Formula::Bottom | Formula::Var(_) => 5,
    }
}

fn write_formula(f: &Formula, out: &mut String) {
    let child = |g: &Formula, min: u8, out: &mut String| {
        if prec(g) < min {
            out.push('(');
            write_formula(g, out);
            out.push(')');
        } else {
            write_formula(g, out);
        }
    };
    match f {
        Formula::Bottom => out.push('F'),
        Formula::Var(c) => out.push_str(c.as_str()),
        _ if f.is_top() => out.push('T'),
        Formula::Implies(l, r) if **r == Formula::Bottom => {
            out.push('~');
            child(l, 4, out);
        }
        Formula::And(l, r) => {
            child(l, 4, out);
            out.push_str(" & ");
            child(r, 3, out);
        }
        Formula::Or(l, r) => {
            child(l, 3, out);
            out.push_str(" v ");
            child(r, 2, out);
        }
        Formula::Implies(l, r) => {
            child(l, 2, out);
            out.push_str(" -> ");
            child(r, 1, out);
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        write_formula(self, &mut s);
        f.write_str(&s)
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for FormulaSequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |xs: &[Formula]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
        let (l, r) = (side(&self.antecedent), side(&self.succedent));
        match (l.is_empty(), r.is_empty()) {
            (true, true) => f.write_str("|-"),
            (true, false) => write!(f, "|- {r}"),
            (false, true) => write!(f, "{l} |-"),
            (false, false) => write!(f, "{l} |- {r}"),
        }
    }
}

impl fmt::Debug for FormulaSequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
