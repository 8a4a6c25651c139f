//! Valuations into finite Heyting algebras, the semantic clauses for
//! diagrams and formulas, and countermodel search.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::diagram::{ContourName, Diagram, Kind, Sequent, UnitaryDiagram, Zone};
use crate::formula::{Formula, FormulaSequent};
use crate::heyting::{enumerate_posets, AlgebraError, HeytingAlgebra};

/// Valuations beyond this count are sampled instead of enumerated.
pub const VALUATION_CAP: u64 = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("no value assigned to `{0}`")]
    Unassigned(ContourName),
    #[error("value {value} for `{name}` is outside an algebra of size {size}")]
    OutOfRange { name: ContourName, value: usize, size: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// An assignment of algebra elements to contours.
#[derive(Clone, Debug)]
pub struct Valuation<'a> {
    algebra: &'a HeytingAlgebra,
    assignment: BTreeMap<ContourName, usize>,
}

impl<'a> Valuation<'a> {
    pub fn new(algebra: &'a HeytingAlgebra, assignment: BTreeMap<ContourName, usize>) -> Result<Self, SemanticsError> {
        for (name, &value) in &assignment {
            if value >= algebra.size() {
                return Err(SemanticsError::OutOfRange { name: name.clone(), value, size: algebra.size() });
            }
        }
        Ok(Self { algebra, assignment })
    }

    pub fn algebra(&self) -> &HeytingAlgebra {
        self.algebra
    }

    pub fn assignment(&self) -> &BTreeMap<ContourName, usize> {
        &self.assignment
    }

    fn get(&self, c: &ContourName) -> Result<usize, SemanticsError> {
        self.assignment.get(c).copied().ok_or_else(|| SemanticsError::Unassigned(c.clone()))
    }
}

pub fn eval_zone(v: &Valuation, z: &Zone) -> Result<usize, SemanticsError> {
    let a = v.algebra;
    let mut acc = a.top();
    for c in z.in_set() {
        acc = a.meet(acc, v.get(c)?);
    }
    for c in z.out_set() {
        acc = a.meet(acc, a.neg(v.get(c)?));
    }
    Ok(acc)
}

pub fn eval_missing_zone(v: &Valuation, z: &Zone) -> Result<usize, SemanticsError> {
    let a = v.algebra;
    let mut ins = a.top();
    for c in z.in_set() {
        ins = a.meet(ins, v.get(c)?);
    }
    let mut outs = a.bottom();
    for c in z.out_set() {
        outs = a.join(outs, v.get(c)?);
    }
    Ok(a.imp(ins, outs))
}

pub fn eval_unitary(v: &Valuation, d: &UnitaryDiagram) -> Result<usize, SemanticsError> {
    let a = v.algebra;
    match d.kind() {
        Kind::Venn => {
            let mut acc = a.bottom();
            for z in d.shaded_zones() {
                acc = a.join(acc, eval_zone(v, z)?);
            }
            Ok(acc)
        }
        Kind::PureEuler => {
            let mut acc = a.top();
            for z in d.missing_zones() {
                acc = a.meet(acc, eval_missing_zone(v, &z)?);
            }
            Ok(acc)
        }
        Kind::EulerVenn => {
            let e = eval_unitary(v, &d.euler_part().expect("Euler-Venn"))?;
            let s = eval_unitary(v, &d.venn_part().expect("Euler-Venn"))?;
            Ok(a.imp(e, s))
        }
    }
}

pub fn eval_diagram(v: &Valuation, d: &Diagram) -> Result<usize, SemanticsError> {
    let a = v.algebra;
    Ok(match d {
        Diagram::Unitary(u) => eval_unitary(v, u)?,
        Diagram::And(l, r) => a.meet(eval_diagram(v, l)?, eval_diagram(v, r)?),
        Diagram::Or(l, r) => a.join(eval_diagram(v, l)?, eval_diagram(v, r)?),
        Diagram::Implies(l, r) => a.imp(eval_diagram(v, l)?, eval_diagram(v, r)?),
    })
}

pub fn eval_formula(v: &Valuation, f: &Formula) -> Result<usize, SemanticsError> {
    let a = v.algebra;
    Ok(match f {
        Formula::Bottom => a.bottom(),
        Formula::Var(c) => v.get(c)?,
        Formula::And(l, r) => a.meet(eval_formula(v, l)?, eval_formula(v, r)?),
        Formula::Or(l, r) => a.join(eval_formula(v, l)?, eval_formula(v, r)?),
        Formula::Implies(l, r) => a.imp(eval_formula(v, l)?, eval_formula(v, r)?),
    })
}

/// The meet of the antecedent and the join of the succedent.
pub fn sequent_values(v: &Valuation, s: &Sequent) -> Result<(usize, usize), SemanticsError> {
    let a = v.algebra;
    let mut lhs = a.top();
    for d in s.antecedent() {
        lhs = a.meet(lhs, eval_diagram(v, d)?);
    }
    let mut rhs = a.bottom();
    for d in s.succedent() {
        rhs = a.join(rhs, eval_diagram(v, d)?);
    }
    Ok((lhs, rhs))
}

pub fn sequent_holds(v: &Valuation, s: &Sequent) -> Result<bool, SemanticsError> {
    let (l, r) = sequent_values(v, s)?;
    Ok(v.algebra.leq(l, r))
}

pub fn formula_sequent_values(v: &Valuation, s: &FormulaSequent) -> Result<(usize, usize), SemanticsError> {
    let a = v.algebra;
    let mut lhs = a.top();
    for f in s.antecedent() {
        lhs = a.meet(lhs, eval_formula(v, f)?);
    }
    let mut rhs = a.bottom();
    for f in s.succedent() {
        rhs = a.join(rhs, eval_formula(v, f)?);
    }
    Ok((lhs, rhs))
}

/// A valuation under which the sequent fails.
#[derive(Clone)]
pub struct Countermodel {
    algebra: HeytingAlgebra,
    assignment: BTreeMap<ContourName, usize>,
    lhs: usize,
    rhs: usize,
}

impl Countermodel {
    /// Re-evaluates `s` and returns a countermodel only if it genuinely fails.
    pub fn new(
        algebra: HeytingAlgebra,
        assignment: BTreeMap<ContourName, usize>,
        s: &Sequent,
    ) -> Result<Option<Countermodel>, SemanticsError> {
        let v = Valuation::new(&algebra, assignment)?;
        let (lhs, rhs) = sequent_values(&v, s)?;
        if algebra.leq(lhs, rhs) {
            return Ok(None);
        }
        let assignment = v.assignment;
        Ok(Some(Countermodel { algebra, assignment, lhs, rhs }))
    }

    pub fn algebra(&self) -> &HeytingAlgebra {
        &self.algebra
    }

    pub fn assignment(&self) -> &BTreeMap<ContourName, usize> {
        &self.assignment
    }

    pub fn lhs_value(&self) -> usize {
        self.lhs
    }

    pub fn rhs_value(&self) -> usize {
        self.rhs
    }

    pub fn value_of(&self, c: &str) -> Option<usize> {
        self.assignment.iter().find(|(k, _)| k.as_str() == c).map(|(_, v)| *v)
    }
}

impl fmt::Debug for Countermodel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Countermodel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "algebra: {}", self.algebra.name())?;
        let assign: Vec<String> = self.assignment.iter().map(|(k, v)| format!("{k}={v}")).collect();
        writeln!(f, "assignment: {}", assign.join(","))?;
        writeln!(f, "antecedent value: {}", self.lhs)?;
        write!(f, "succedent value: {}", self.rhs)
    }
}

#[derive(Debug, Clone)]
pub enum Validity {
    /// No failing valuation found; `exhaustive` is false when sampled.
    Valid { exhaustive: bool, checked: u64 },
    Invalid(Countermodel),
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validity::Valid { .. })
    }

    pub fn countermodel(&self) -> Option<&Countermodel> {
        match self {
            Validity::Invalid(c) => Some(c),
            _ => None,
        }
    }
}

/// Checks every valuation of the sequent's contours, or a seeded sample
/// when there are more than [`VALUATION_CAP`].
pub fn valid_in_algebra(algebra: &HeytingAlgebra, s: &Sequent, seed: u64) -> Result<Validity, SemanticsError> {
    let vars: Vec<ContourName> = s.contours().into_iter().collect();
    let n = algebra.size() as u64;
    let total = (0..vars.len()).try_fold(1u64, |acc, _| acc.checked_mul(n));
    let make = |values: &[usize]| -> BTreeMap<ContourName, usize> {
        vars.iter().cloned().zip(values.iter().copied()).collect()
    };
    let test = |values: &[usize]| -> Result<Option<Countermodel>, SemanticsError> {
        let v = Valuation::new(algebra, make(values))?;
        if sequent_holds(&v, s)? {
            Ok(None)
        } else {
            Countermodel::new(algebra.clone(), make(values), s)
        }
    };
    match total {
        Some(total) if total <= VALUATION_CAP => {
            let mut values = vec![0usize; vars.len()];
            for _ in 0..total {
                if let Some(c) = test(&values)? {
                    return Ok(Validity::Invalid(c));
                }
                // odometer with the first variable varying slowest
                for slot in values.iter_mut().rev() {
                    *slot += 1;
                    if *slot < algebra.size() {
                        break;
                    }
                    *slot = 0;
                }
            }
            Ok(Validity::Valid { exhaustive: true, checked: total })
        }
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut values = vec![0usize; vars.len()];
            for _ in 0..VALUATION_CAP {
                for slot in values.iter_mut() {
                    *slot = rng.gen_range(0..algebra.size());
                }
                if let Some(c) = test(&values)? {
                    return Ok(Validity::Invalid(c));
                }
            }
            Ok(Validity::Valid { exhaustive: false, checked: VALUATION_CAP })
        }
    }
}

/// The countermodel search space in its fixed order: chains of size 2 to 6,
/// then up-set algebras of all labelled posets with 1 to `max_poset` points.
pub fn search_algebras(max_poset: usize) -> Result<impl Iterator<Item = HeytingAlgebra>, SemanticsError> {
    let posets = (1..=max_poset).map(enumerate_posets).collect::<Result<Vec<_>, _>>()?;
    let chains = (2..=6).map(|n| HeytingAlgebra::chain(n).expect("small chain"));
    let upsets = posets
        .into_iter()
        .flatten()
        .map(|p| HeytingAlgebra::upset_algebra(&p).expect("posets up to five points"));
    Ok(chains.chain(upsets))
}

/// First countermodel in the fixed search order. `None` means the budget was
/// exhausted, which is not a proof of validity.
pub fn find_countermodel(s: &Sequent, max_poset: usize, seed: u64) -> Result<Option<Countermodel>, SemanticsError> {
    for algebra in search_algebras(max_poset)? {
        if let Validity::Invalid(c) = valid_in_algebra(&algebra, s, seed)? {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::contour_set;
    use crate::syntax::{parse_diagram, parse_formula, parse_sequent};

    fn name(s: &str) -> ContourName {
        ContourName::new(s).unwrap()
    }

    fn val<'a>(alg: &'a HeytingAlgebra, pairs: &[(&str, usize)]) -> Valuation<'a> {
        Valuation::new(alg, pairs.iter().map(|(k, v)| (name(k), *v)).collect()).unwrap()
    }

    fn zone(ins: &str, outs: &str) -> Zone {
        Zone::new(contour_set(ins).unwrap(), contour_set(outs).unwrap()).unwrap()
    }

    #[test]
    fn zone_values_in_three_chain() {
        let c3 = HeytingAlgebra::chain(3).unwrap();
        assert_eq!(eval_zone(&val(&c3, &[("a", 2), ("b", 1)]), &zone("a", "b")).unwrap(), 0);
        assert_eq!(eval_zone(&val(&c3, &[]), &zone("", "")).unwrap(), 2);
        assert_eq!(eval_zone(&val(&c3, &[("a", 0)]), &zone("", "a")).unwrap(), 2);
        assert!(matches!(eval_zone(&val(&c3, &[]), &zone("a", "")), Err(SemanticsError::Unassigned(_))));
    }

    #[test]
    fn missing_zone_values() {
        let c3 = HeytingAlgebra::chain(3).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                let v = val(&c3, &[("a", a), ("b", b)]);
                assert_eq!(eval_missing_zone(&v, &zone("a b", "")).unwrap(), c3.imp(c3.meet(a, b), 0));
                assert_eq!(eval_missing_zone(&v, &zone("a", "b")).unwrap(), c3.imp(a, b));
            }
        }
        assert_eq!(eval_missing_zone(&val(&c3, &[]), &zone("", "")).unwrap(), 0);
    }

    #[test]
    fn diagram_values() {
        let c3 = HeytingAlgebra::chain(3).unwrap();
        let lem = parse_diagram("venn{contours: a; shaded: <a> <>}").unwrap();
        assert_eq!(eval_diagram(&val(&c3, &[("a", 1)]), &lem).unwrap(), 1);
        for alg in [HeytingAlgebra::chain(2).unwrap(), c3.clone()] {
            let v = val(&alg, &[]);
            assert_eq!(eval_diagram(&v, &Diagram::top()).unwrap(), alg.top());
            assert_eq!(eval_diagram(&v, &Diagram::bottom()).unwrap(), alg.bottom());
        }
        let full = parse_diagram("euler{contours: a; zones: <> <a>}").unwrap();
        assert_eq!(eval_diagram(&val(&c3, &[("a", 1)]), &full).unwrap(), 2);
        let empty = parse_diagram("euler{contours: ; zones: }").unwrap();
        assert_eq!(eval_diagram(&val(&c3, &[]), &empty).unwrap(), 0);
    }

    #[test]
    fn formula_values() {
        let c3 = HeytingAlgebra::chain(3).unwrap();
        let v = val(&c3, &[("a", 1)]);
        assert_eq!(eval_formula(&v, &parse_formula("a v ~a").unwrap()).unwrap(), 1);
        assert_eq!(eval_formula(&v, &Formula::Bottom).unwrap(), 0);
        assert_eq!(eval_formula(&v, &parse_formula("a -> a").unwrap()).unwrap(), 2);
    }

    #[test]
    fn sequent_truth() {
        let c3 = HeytingAlgebra::chain(3).unwrap();
        let v = val(&c3, &[("a", 1)]);
        assert!(sequent_holds(&v, &parse_sequent("+a |- +a").unwrap()).unwrap());
        assert!(!sequent_holds(&v, &parse_sequent("|- venn{contours: a; shaded: <a> <>}").unwrap()).unwrap());
        assert!(sequent_holds(&v, &parse_sequent("FALSE |-").unwrap()).unwrap());
    }

    #[test]
    fn validity_in_chains() {
        let lem = parse_sequent("|- venn{contours: a; shaded: <a> <>}").unwrap();
        assert!(valid_in_algebra(&HeytingAlgebra::chain(2).unwrap(), &lem, 0).unwrap().is_valid());
        let c3 = HeytingAlgebra::chain(3).unwrap();
        let cm = valid_in_algebra(&c3, &lem, 0).unwrap();
        assert_eq!(cm.countermodel().unwrap().value_of("a"), Some(1));

        let peirce = parse_sequent("|- ((+a -> +b) -> +a) -> +a").unwrap();
        let cm = valid_in_algebra(&c3, &peirce, 0).unwrap();
        let cm = cm.countermodel().unwrap();
        assert_eq!((cm.value_of("a"), cm.value_of("b"), cm.rhs_value()), (Some(1), Some(0), 1));
    }

    #[test]
    fn countermodel_search() {
        let lem = parse_sequent("|- venn{contours: a; shaded: <a> <>}").unwrap();
        let cm = find_countermodel(&lem, 3, 0).unwrap().unwrap();
        assert_eq!(cm.algebra().name(), "chain:3");
        assert!(find_countermodel(&parse_sequent("+a |- +a").unwrap(), 3, 0).unwrap().is_none());

        let s = parse_sequent("venn{contours: a b; shaded: <a>} -> FALSE |- euler{contours: a b; zones: <> <b> <a b>}")
            .unwrap();
        let cm = find_countermodel(&s, 2, 0).unwrap().unwrap();
        assert_eq!(cm.algebra().name(), "chain:3");
        assert_eq!((cm.value_of("a"), cm.value_of("b")), (Some(2), Some(1)));
        assert_eq!((cm.lhs_value(), cm.rhs_value()), (2, 1));
    }

    #[test]
    fn countermodels_self_check() {
        let c3 = HeytingAlgebra::chain(3).unwrap();
        let s = parse_sequent("+a |- +a").unwrap();
        assert!(Countermodel::new(c3, [(name("a"), 1)].into(), &s).unwrap().is_none());
    }

    #[test]
    fn sampling_is_flagged() {
        // 7 contours in a 6-chain exceed the enumeration cap
        let s = parse_sequent("+a, +b, +c, +d, +e, +f, +g |- +a").unwrap();
        match valid_in_algebra(&HeytingAlgebra::chain(6).unwrap(), &s, 3).unwrap() {
            Validity::Valid { exhaustive, .. } => assert!(!exhaustive),
            Validity::Invalid(_) => panic!("valid sequent"),
        }
    }
}
