//! Rules of the diagrammatic calculus, proof trees, and the proof checker.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::diagram::{ContourName, Diagram, Kind, Sequent, Side, UnitaryDiagram, Zone};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleName {
    Axiom,
    BotL,
    TopR,
    AndL,
    AndR,
    OrL,
    OrR,
    ImpL,
    ImpR,
    LitL,
    LitR,
    SepL,
    SepR,
    SingDecL,
    SingDecR,
    ReduceL,
    ReduceR,
    MzSepL,
    MzSepR,
    ImpDecL,
    ImpDecR,
    DetL,
    DetR,
}

impl RuleName {
    pub const ALL: [RuleName; 23] = [
        RuleName::Axiom,
        RuleName::BotL,
        RuleName::TopR,
        RuleName::AndL,
        RuleName::AndR,
        RuleName::OrL,
        RuleName::OrR,
        RuleName::ImpL,
        RuleName::ImpR,
        RuleName::LitL,
        RuleName::LitR,
        RuleName::SepL,
        RuleName::SepR,
        RuleName::SingDecL,
        RuleName::SingDecR,
        RuleName::ReduceL,
        RuleName::ReduceR,
        RuleName::MzSepL,
        RuleName::MzSepR,
        RuleName::ImpDecL,
        RuleName::ImpDecR,
        RuleName::DetL,
        RuleName::DetR,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleName::Axiom => "Axiom",
            RuleName::BotL => "BotL",
            RuleName::TopR => "TopR",
            RuleName::AndL => "AndL",
            RuleName::AndR => "AndR",
            RuleName::OrL => "OrL",
            RuleName::OrR => "OrR",
            RuleName::ImpL => "ImpL",
            RuleName::ImpR => "ImpR",
            RuleName::LitL => "LitL",
            RuleName::LitR => "LitR",
            RuleName::SepL => "SepL",
            RuleName::SepR => "SepR",
            RuleName::SingDecL => "SingDecL",
            RuleName::SingDecR => "SingDecR",
            RuleName::ReduceL => "ReduceL",
            RuleName::ReduceR => "ReduceR",
            RuleName::MzSepL => "MzSepL",
            RuleName::MzSepR => "MzSepR",
            RuleName::ImpDecL => "ImpDecL",
            RuleName::ImpDecR => "ImpDecR",
            RuleName::DetL => "DetL",
            RuleName::DetR => "DetR",
        }
    }

    /// Parses a rule name; `eqDecL`/`eqDecR` are accepted for the separation rules.
    pub fn from_name(s: &str) -> Option<RuleName> {
        match s {
            "eqDecL" => Some(RuleName::SepL),
            "eqDecR" => Some(RuleName::SepR),
            _ => RuleName::ALL.into_iter().find(|r| r.name() == s),
        }
    }

    /// The side of the principal diagram; leaves have none.
    pub fn side(self) -> Option<Side> {
        use RuleName::*;
        match self {
            Axiom | BotL | TopR => None,
            AndL | OrL | ImpL | LitL | SepL | SingDecL | ReduceL | MzSepL | ImpDecL | DetL => Some(Side::Left),
            AndR | OrR | ImpR | LitR | SepR | SingDecR | ReduceR | MzSepR | ImpDecR | DetR => Some(Side::Right),
        }
    }

    pub fn is_leaf(self) -> bool {
        self.side().is_none()
    }

    /// Rules whose premises are derivable from their conclusion.
    pub fn is_invertible(self) -> bool {
        use RuleName::*;
        matches!(
            self,
            AndL | AndR | OrL | OrR | SepL | SepR | SingDecL | SingDecR | ReduceL | ReduceR | MzSepL | MzSepR
        )
    }
}

impl fmt::Display for RuleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Rule-specific data of a proof node.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub enum Aux {
    #[default]
    None,
    /// The two zone sets of a separation rule: shaded zones for `Sep`,
    /// missing zones for `MzSep`.
    Cover(BTreeSet<Zone>, BTreeSet<Zone>),
    /// The contours removed by a reduction rule.
    Contours(Vec<ContourName>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("{0} takes no principal diagram")]
    UnexpectedPrincipal(RuleName),
    #[error("{0} needs a principal diagram")]
    MissingPrincipal(RuleName),
    #[error("principal index {index} is out of range for a side of {len}")]
    PrincipalOutOfRange { index: usize, len: usize },
    #[error("{rule} does not apply to {diagram}: {reason}")]
    WrongShape { rule: RuleName, diagram: String, reason: String },
    #[error("no positive literal occurs on both sides")]
    NoSharedLiteral,
    #[error("no falsum-shaped diagram in the antecedent")]
    NoFalsum,
    #[error("no verum-shaped diagram in the succedent")]
    NoVerum,
    #[error("bad auxiliary data for {rule}: {reason}")]
    BadAux { rule: RuleName, reason: String },
    #[error("reduction must use the maximal contour set {expected:?}, found {found:?}")]
    NotMaximal { expected: Vec<ContourName>, found: Vec<ContourName> },
    #[error("{0} instance has no premises; close the sequent with a leaf rule")]
    Degenerate(RuleName),
    #[error("premises do not match: expected {expected:?}, found {found:?}")]
    PremiseMismatch { expected: Vec<String>, found: Vec<String> },
}

/// One premise of a rule instance. `keeps_right` is false for premises whose
/// succedent is replaced rather than extended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PremiseSpec {
    pub sequent: Sequent,
    pub keeps_right: bool,
}

/// A proof tree with explicit conclusions at every node.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DiagProof {
    pub rule: RuleName,
    pub conclusion: Sequent,
    /// Index of the principal diagram in the sorted side given by the rule.
    pub principal: Option<usize>,
    pub aux: Aux,
    pub premises: Vec<DiagProof>,
}

impl DiagProof {
    pub fn leaf(rule: RuleName, conclusion: Sequent) -> DiagProof {
        DiagProof { rule, conclusion, principal: None, aux: Aux::None, premises: Vec::new() }
    }

    /// A node whose principal is given by value rather than by index.
    pub fn node(
        rule: RuleName,
        conclusion: Sequent,
        principal: &Diagram,
        aux: Aux,
        premises: Vec<DiagProof>,
    ) -> DiagProof {
        let side = rule.side().expect("inner rule");
        let index = conclusion.side(side).iter().position(|d| d == principal).expect("principal in conclusion");
        DiagProof { rule, conclusion, principal: Some(index), aux, premises }
    }

    /// Leaves have height 0.
    pub fn height(&self) -> usize {
        self.premises.iter().map(|p| p.height() + 1).max().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(DiagProof::size).sum::<usize>()
    }

    pub fn principal_diagram(&self) -> Option<&Diagram> {
        let side = self.rule.side()?;
        self.conclusion.side(side).get(self.principal?)
    }

    /// Premise specs of this node's rule instance.
    pub fn instance(&self) -> Result<Vec<PremiseSpec>, RuleError> {
        rule_instance(&self.conclusion, self.rule, self.principal, &self.aux)
    }

    /// Pairs each child with its premise spec.
    pub(crate) fn matched_premises(&self) -> Result<Vec<PremiseSpec>, RuleError> {
        let specs = self.instance()?;
        let mut used = vec![false; specs.len()];
        let mut out = Vec::new();
        for child in &self.premises {
            let j = (0..specs.len())
                .find(|&j| !used[j] && specs[j].sequent == child.conclusion)
                .ok_or_else(|| mismatch(&specs, &self.premises))?;
            used[j] = true;
            out.push(specs[j].clone());
        }
        Ok(out)
    }

    pub fn rules_used(&self) -> BTreeSet<RuleName> {
        let mut out = BTreeSet::new();
        self.collect_rules(&mut out);
        out
    }

    fn collect_rules(&self, out: &mut BTreeSet<RuleName>) {
        out.insert(self.rule);
        for p in &self.premises {
            p.collect_rules(out);
        }
    }
}

impl fmt::Debug for DiagProof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::print_proof(self))
    }
}

fn mismatch(specs: &[PremiseSpec], premises: &[DiagProof]) -> RuleError {
    RuleError::PremiseMismatch {
        expected: specs.iter().map(|s| s.sequent.to_string()).collect(),
        found: premises.iter().map(|p| p.conclusion.to_string()).collect(),
    }
}

fn literal(c: &ContourName, positive: bool) -> Diagram {
    Diagram::literal(c, positive)
}

fn zone_literals(z: &Zone) -> Vec<Diagram> {
    z.in_set().iter().map(|c| literal(c, true)).chain(z.out_set().iter().map(|c| literal(c, false))).collect()
}

fn sorted_cover_check(
    rule: RuleName,
    all: &BTreeSet<Zone>,
    aux: &Aux,
) -> Result<(BTreeSet<Zone>, BTreeSet<Zone>), RuleError> {
    let Aux::Cover(a, b) = aux else {
        return Err(RuleError::BadAux { rule, reason: "expected two zone sets".into() });
    };
    if !a.is_subset(all) || !b.is_subset(all) {
        return Err(RuleError::BadAux { rule, reason: "cover uses zones outside the diagram's set".into() });
    }
    if a.union(b).count() != all.len() {
        return Err(RuleError::BadAux { rule, reason: "the two sets do not cover the diagram's set".into() });
    }
    Ok((a.clone(), b.clone()))
}

/// Computes the premises of a backward rule application, enforcing every
/// side condition of the rule.
pub fn rule_instance(
    conclusion: &Sequent,
    rule: RuleName,
    principal: Option<usize>,
    aux: &Aux,
) -> Result<Vec<PremiseSpec>, RuleError> {
    let Some(side) = rule.side() else {
        if principal.is_some() {
            return Err(RuleError::UnexpectedPrincipal(rule));
        }
        if *aux != Aux::None {
            return Err(RuleError::BadAux { rule, reason: "leaves carry no data".into() });
        }
        let ok = match rule {
            RuleName::Axiom => conclusion
                .antecedent()
                .iter()
                .any(|d| d.as_unitary().is_some_and(UnitaryDiagram::is_positive_literal) && conclusion.succedent().contains(d)),
            RuleName::BotL => {
                conclusion.antecedent().iter().any(|d| d.as_unitary().is_some_and(UnitaryDiagram::is_falsum_shape))
            }
            _ => conclusion.succedent().iter().any(|d| d.as_unitary().is_some_and(UnitaryDiagram::is_verum_shape)),
        };
        return match (ok, rule) {
            (true, _) => Ok(Vec::new()),
            (false, RuleName::Axiom) => Err(RuleError::NoSharedLiteral),
            (false, RuleName::BotL) => Err(RuleError::NoFalsum),
            (false, _) => Err(RuleError::NoVerum),
        };
    };
    let index = principal.ok_or(RuleError::MissingPrincipal(rule))?;
    let items = conclusion.side(side);
    let p = items.get(index).ok_or(RuleError::PrincipalOutOfRange { index, len: items.len() })?.clone();
    let rest = conclusion.without(side, &p).expect("principal occurs");
    let shape = |reason: &str| RuleError::WrongShape { rule, diagram: p.to_string(), reason: reason.into() };
    let needs_no_aux = |aux: &Aux| {
        if *aux == Aux::None {
            Ok(())
        } else {
            Err(RuleError::BadAux { rule, reason: "this rule carries no data".into() })
        }
    };

    // Γ' ⊢ Δ with the principal removed from the antecedent.
    let left_prem = |adds: Vec<Diagram>, keep_principal: bool, succ: Option<Vec<Diagram>>| {
        let mut ante: Vec<Diagram> = rest.antecedent().to_vec();
        if keep_principal {
            ante.push(p.clone());
        }
        ante.extend(adds);
        let keeps_right = succ.is_none();
        let succ = succ.unwrap_or_else(|| conclusion.succedent().to_vec());
        PremiseSpec { sequent: Sequent::new(ante, succ), keeps_right }
    };
    // Γ ⊢ Δ' with the principal removed from the succedent.
    let right_prem = |left_adds: Vec<Diagram>, adds: Vec<Diagram>, keep_context: bool| {
        let mut ante = conclusion.antecedent().to_vec();
        ante.extend(left_adds);
        let mut succ = if keep_context { rest.succedent().to_vec() } else { Vec::new() };
        succ.extend(adds);
        PremiseSpec { sequent: Sequent::new(ante, succ), keeps_right: keep_context }
    };

    let unit = p.as_unitary();
    let premises = match rule {
        RuleName::AndL | RuleName::OrL | RuleName::ImpL | RuleName::AndR | RuleName::OrR | RuleName::ImpR => {
            needs_no_aux(aux)?;
            match (rule, &p) {
                (RuleName::AndL, Diagram::And(a, b)) => vec![left_prem(vec![(**a).clone(), (**b).clone()], false, None)],
                (RuleName::OrL, Diagram::Or(a, b)) => {
                    vec![left_prem(vec![(**a).clone()], false, None), left_prem(vec![(**b).clone()], false, None)]
                }
                (RuleName::ImpL, Diagram::Implies(a, b)) => vec![
                    left_prem(vec![], true, Some(vec![(**a).clone()])),
                    left_prem(vec![(**b).clone()], false, None),
                ],
                (RuleName::AndR, Diagram::And(a, b)) => vec![
                    right_prem(vec![], vec![(**a).clone()], true),
                    right_prem(vec![], vec![(**b).clone()], true),
                ],
                (RuleName::OrR, Diagram::Or(a, b)) => vec![right_prem(vec![], vec![(**a).clone(), (**b).clone()], true)],
                (RuleName::ImpR, Diagram::Implies(a, b)) => {
                    vec![right_prem(vec![(**a).clone()], vec![(**b).clone()], false)]
                }
                _ => return Err(shape("wrong connective")),
            }
        }
        RuleName::LitL | RuleName::LitR => {
            needs_no_aux(aux)?;
            let Some((c, false)) = unit.and_then(UnitaryDiagram::as_literal) else {
                return Err(shape("not a negative literal"));
            };
            if rule == RuleName::LitL {
                vec![left_prem(vec![], true, Some(vec![literal(c, true)]))]
            } else {
                vec![right_prem(vec![literal(c, true)], vec![], false)]
            }
        }
        RuleName::SepL | RuleName::SepR => {
            let d = unit.filter(|d| d.kind() == Kind::Venn).ok_or_else(|| shape("not a Venn diagram"))?;
            if d.shaded_zones().len() < 2 {
                return Err(shape("needs more than one shaded zone"));
            }
            let (a, b) = sorted_cover_check(rule, d.shaded_zones(), aux)?;
            let (d1, d2) = (Diagram::from(d.with_shading(a)), Diagram::from(d.with_shading(b)));
            if rule == RuleName::SepL {
                vec![left_prem(vec![d1], false, None), left_prem(vec![d2], false, None)]
            } else {
                vec![right_prem(vec![], vec![d1, d2], true)]
            }
        }
        RuleName::SingDecL | RuleName::SingDecR => {
            needs_no_aux(aux)?;
            let d = unit.filter(|d| d.kind() == Kind::Venn).ok_or_else(|| shape("not a Venn diagram"))?;
            if d.shaded_zones().len() != 1 {
                return Err(shape("needs exactly one shaded zone"));
            }
            let lits = zone_literals(d.shaded_zones().iter().next().expect("one zone"));
            if rule == RuleName::SingDecL {
                vec![left_prem(lits, false, None)]
            } else {
                lits.into_iter().map(|l| right_prem(vec![], vec![l], true)).collect()
            }
        }
        RuleName::ReduceL | RuleName::ReduceR => {
            let d = unit.filter(|d| d.kind() == Kind::PureEuler).ok_or_else(|| shape("not a pure Euler diagram"))?;
            let maximal: Vec<ContourName> = d.reducible_contours().expect("pure Euler").into_iter().collect();
            if maximal.is_empty() {
                return Err(shape("some missing zone has no missing adjacent zone"));
            }
            let Aux::Contours(given) = aux else {
                return Err(RuleError::BadAux { rule, reason: "expected a contour list".into() });
            };
            let mut sorted = given.clone();
            sorted.sort();
            sorted.dedup();
            if sorted != maximal || sorted.len() != given.len() {
                return Err(RuleError::NotMaximal { expected: maximal, found: given.clone() });
            }
            let reduced: Vec<Diagram> =
                maximal.iter().map(|c| Diagram::from(d.reduce(c).expect("contour of d"))).collect();
            if rule == RuleName::ReduceL {
                vec![left_prem(reduced, false, None)]
            } else {
                reduced.into_iter().map(|r| right_prem(vec![], vec![r], true)).collect()
            }
        }
        RuleName::MzSepL | RuleName::MzSepR => {
            let d = unit.filter(|d| d.kind() == Kind::PureEuler).ok_or_else(|| shape("not a pure Euler diagram"))?;
            let missing = d.missing_zones();
            if missing.len() < 2 {
                return Err(shape("needs more than one missing zone"));
            }
            let (a, b) = sorted_cover_check(rule, &missing, aux)?;
            let (d1, d2) = (Diagram::from(d.with_missing(&a)), Diagram::from(d.with_missing(&b)));
            if rule == RuleName::MzSepL {
                vec![left_prem(vec![d1, d2], false, None)]
            } else {
                vec![right_prem(vec![], vec![d1], true), right_prem(vec![], vec![d2], true)]
            }
        }
        RuleName::ImpDecL | RuleName::ImpDecR => {
            needs_no_aux(aux)?;
            let d = unit.filter(|d| d.kind() == Kind::PureEuler).ok_or_else(|| shape("not a pure Euler diagram"))?;
            let missing = d.missing_zones();
            if missing.len() != 1 {
                return Err(shape("needs exactly one missing zone"));
            }
            let z = missing.into_iter().next().expect("one zone");
            let ins: Vec<Diagram> = z.in_set().iter().map(|c| literal(c, true)).collect();
            let outs: Vec<Diagram> = z.out_set().iter().map(|c| literal(c, true)).collect();
            if rule == RuleName::ImpDecL {
                ins.into_iter()
                    .map(|n| left_prem(vec![], true, Some(vec![n])))
                    .chain(outs.into_iter().map(|o| left_prem(vec![o], false, None)))
                    .collect()
            } else {
                vec![right_prem(ins, outs, false)]
            }
        }
        RuleName::DetL | RuleName::DetR => {
            needs_no_aux(aux)?;
            let d = unit.filter(|d| d.kind() == Kind::EulerVenn).ok_or_else(|| shape("not an Euler-Venn diagram"))?;
            let euler = Diagram::from(d.euler_part().expect("Euler-Venn"));
            let venn = Diagram::from(d.venn_part().expect("Euler-Venn"));
            if rule == RuleName::DetL {
                vec![left_prem(vec![], true, Some(vec![euler])), left_prem(vec![venn], false, None)]
            } else {
                vec![right_prem(vec![euler], vec![venn], false)]
            }
        }
        RuleName::Axiom | RuleName::BotL | RuleName::TopR => unreachable!("leaves handled above"),
    };
    if premises.is_empty() {
        return Err(RuleError::Degenerate(rule));
    }
    Ok(premises)
}

/// Checks a single rule instance; premises are compared as a multiset.
pub fn check_step(
    rule: RuleName,
    conclusion: &Sequent,
    principal: Option<usize>,
    aux: &Aux,
    premises: &[Sequent],
) -> Result<(), RuleError> {
    let specs = rule_instance(conclusion, rule, principal, aux)?;
    let mut expected: Vec<&Sequent> = specs.iter().map(|s| &s.sequent).collect();
    let mut found: Vec<&Sequent> = premises.iter().collect();
    expected.sort();
    found.sort();
    if expected != found {
        return Err(RuleError::PremiseMismatch {
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: found.iter().map(|s| s.to_string()).collect(),
        });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{rule} at node {path:?} ({conclusion}): {source}")]
pub struct CheckError {
    pub path: Vec<usize>,
    pub rule: RuleName,
    pub conclusion: String,
    pub source: RuleError,
}

/// Checks every node of a proof tree.
pub fn check_proof(p: &DiagProof) -> Result<(), CheckError> {
    fn go(p: &DiagProof, path: &mut Vec<usize>) -> Result<(), CheckError> {
        let premises: Vec<Sequent> = p.premises.iter().map(|q| q.conclusion.clone()).collect();
        check_step(p.rule, &p.conclusion, p.principal, &p.aux, &premises).map_err(|source| CheckError {
            path: path.clone(),
            rule: p.rule,
            conclusion: p.conclusion.to_string(),
            source,
        })?;
        for (i, q) in p.premises.iter().enumerate() {
            path.push(i);
            go(q, path)?;
            path.pop();
        }
        Ok(())
    }
    go(p, &mut Vec::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_diagram, parse_sequent};

    fn s(text: &str) -> Sequent {
        parse_sequent(text).unwrap()
    }

    const D_A: &str = "ev{contours: a c; zones: <> <a> <c>; shaded: <c>}";
    const D_C: &str = "ev{contours: a b c; zones: <> <b> <c> <a b>; shaded: <c>}";
    const D_C_STAR: &str = "euler{contours: a b c; zones: <> <b> <c> <a b>}";

    #[test]
    fn rule_names_round_trip() {
        for r in RuleName::ALL {
            assert_eq!(RuleName::from_name(r.name()), Some(r));
        }
        assert_eq!(RuleName::from_name("eqDecR"), Some(RuleName::SepR));
        assert_eq!(RuleName::from_name("Cut"), None);
    }

    #[test]
    fn det_r_at_the_root() {
        let c = s(&format!("{D_A} |- {D_C}"));
        let premise = s(&format!("{D_C_STAR}, {D_A} |- venn{{contours: a b c; shaded: <c>}}"));
        check_step(RuleName::DetR, &c, Some(0), &Aux::None, &[premise]).unwrap();
    }

    #[test]
    fn sing_dec_r_three_premises() {
        let c = s(&format!("{D_C_STAR}, {D_A} |- venn{{contours: a b c; shaded: <c>}}"));
        let prems = [
            s(&format!("{D_C_STAR}, {D_A} |- +c")),
            s(&format!("{D_C_STAR}, {D_A} |- -b")),
            s(&format!("{D_C_STAR}, {D_A} |- -a")),
        ];
        check_step(RuleName::SingDecR, &c, Some(0), &Aux::None, &prems).unwrap();
        assert!(check_step(RuleName::SingDecR, &c, Some(0), &Aux::None, &prems[..2]).is_err());
    }

    #[test]
    fn reduce_needs_the_maximal_set() {
        let c = s(&format!("{D_C_STAR}, {D_A} |- +c"));
        let idx = c.antecedent().iter().position(|d| *d == parse_diagram(D_C_STAR).unwrap()).unwrap();
        let name = |x: &str| ContourName::new(x).unwrap();
        let partial = Aux::Contours(vec![name("a"), name("b")]);
        assert!(matches!(
            rule_instance(&c, RuleName::ReduceL, Some(idx), &partial),
            Err(RuleError::NotMaximal { .. })
        ));
        let full = Aux::Contours(vec![name("a"), name("b"), name("c")]);
        let prems = rule_instance(&c, RuleName::ReduceL, Some(idx), &full).unwrap();
        assert_eq!(prems.len(), 1);
        assert_eq!(prems[0].sequent.antecedent().len(), 4);
    }

    #[test]
    fn leaves() {
        assert!(check_step(RuleName::Axiom, &s("+a |- +a, -a"), None, &Aux::None, &[]).is_ok());
        assert!(check_step(RuleName::Axiom, &s("-a |- -a"), None, &Aux::None, &[]).is_err());
        assert!(check_step(RuleName::BotL, &s("FALSE |-"), None, &Aux::None, &[]).is_ok());
        assert!(check_step(RuleName::BotL, &s("venn{contours: a; shaded: } |- +b"), None, &Aux::None, &[]).is_ok());
        assert!(check_step(RuleName::TopR, &s("|- TRUE"), None, &Aux::None, &[]).is_ok());
        assert!(check_step(RuleName::TopR, &s("|- euler{contours: a; zones: <> <a>}"), None, &Aux::None, &[]).is_ok());
        assert!(check_step(RuleName::TopR, &s("|- +a"), None, &Aux::None, &[]).is_err());
    }

    #[test]
    fn degenerate_instances_are_rejected() {
        let c = s("|- TRUE");
        assert_eq!(rule_instance(&c, RuleName::SingDecR, Some(0), &Aux::None), Err(RuleError::Degenerate(RuleName::SingDecR)));
    }

    #[test]
    fn restricted_succedents() {
        let c = s("-a, +b |- +c");
        let idx = c.antecedent().iter().position(|d| d.to_string() == "-a").unwrap();
        let specs = rule_instance(&c, RuleName::LitL, Some(idx), &Aux::None).unwrap();
        assert_eq!(specs[0].sequent, s("-a, +b |- +a"));
        assert!(!specs[0].keeps_right);
        let c = s("+b |- -a, +c");
        let idx = c.succedent().iter().position(|d| d.to_string() == "-a").unwrap();
        let specs = rule_instance(&c, RuleName::LitR, Some(idx), &Aux::None).unwrap();
        assert_eq!(specs[0].sequent, s("+a, +b |-"));
    }

    #[test]
    fn covers_are_accepted() {
        let c = s("|- venn{contours: a b; shaded: <> <a> <b>}");
        let z = |t: &str| {
            let d = parse_diagram(&format!("venn{{contours: a b; shaded: {t}}}")).unwrap();
            d.as_unitary().unwrap().shaded_zones().clone()
        };
        let aux = Aux::Cover(z("<> <a>"), z("<a> <b>"));
        let specs = rule_instance(&c, RuleName::SepR, Some(0), &aux).unwrap();
        assert_eq!(specs.len(), 1);
        let bad = Aux::Cover(z("<>"), z("<a>"));
        assert!(rule_instance(&c, RuleName::SepR, Some(0), &bad).is_err());
    }
}
