//! Abstract syntax of zones, unitary diagrams and compound diagrams,
//! together with the purely syntactic operations on them.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Maximum number of contours a single unitary diagram may carry.
pub const MAX_CONTOURS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("invalid contour name `{0}`")]
    InvalidName(String),
    #[error("{count} contours exceed the cap of {MAX_CONTOURS}")]
    TooManyContours { count: usize },
    #[error("in-set and out-set of a zone share contour `{0}`")]
    OverlappingZone(ContourName),
    #[error("zone {zone} does not partition the diagram contours")]
    ZoneOutsideContext { zone: Zone },
    #[error("shaded zone {zone} is not visible")]
    ShadedNotVisible { zone: Zone },
    #[error("a Venn diagram must show every zone")]
    VennMissingZone,
    #[error("a pure Euler diagram cannot carry shading")]
    ShadedPureEuler,
    #[error("contour `{contour}` does not occur in {context}")]
    ContourAbsent { contour: ContourName, context: String },
    #[error("expected a {expected} diagram, found {found}")]
    WrongKind { expected: Kind, found: Kind },
    #[error("split must be a proper nonempty part of {available} zones")]
    ImproperSplit { available: usize },
    #[error("split needs more than one zone, found {0}")]
    NothingToSplit(usize),
}

/// A contour label. Names are ordered lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ContourName(Arc<str>);

impl ContourName {
    pub fn new(name: &str) -> Result<Self, DiagramError> {
        if is_identifier(name) {
            Ok(Self(Arc::from(name)))
        } else {
            Err(DiagramError::InvalidName(name.to_string()))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ContourName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for ContourName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub type ContourSet = BTreeSet<ContourName>;

/// Parses a whitespace separated list of names into a contour set.
pub fn contour_set(names: &str) -> Result<ContourSet, DiagramError> {
    names.split_whitespace().map(ContourName::new).collect()
}

/// A partition of a contour set into an in-set and an out-set.
///
/// Zones order short-lex by in-set (size first, then lexicographically), so
/// `<>` < `<a>` < `<b>` < `<a b>`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Zone(Arc<(ContourSet, ContourSet)>);

impl Zone {
    pub fn new(in_set: ContourSet, out_set: ContourSet) -> Result<Self, DiagramError> {
        if let Some(c) = in_set.intersection(&out_set).next() {
            return Err(DiagramError::OverlappingZone(c.clone()));
        }
        Ok(Self::of(in_set, out_set))
    }

    fn of(in_set: ContourSet, out_set: ContourSet) -> Self {
        Self(Arc::new((in_set, out_set)))
    }

    /// The zone of `contours` whose in-set is `in_set`.
    pub fn inside(contours: &ContourSet, in_set: ContourSet) -> Result<Self, DiagramError> {
        if let Some(c) = in_set.iter().find(|c| !contours.contains(*c)) {
            return Err(DiagramError::ContourAbsent {
                contour: c.clone(),
                context: "the contour set".into(),
            });
        }
        let out_set = contours.difference(&in_set).cloned().collect();
        Ok(Self::of(in_set, out_set))
    }

    pub fn in_set(&self) -> &ContourSet {
        &self.0 .0
    }

    pub fn out_set(&self) -> &ContourSet {
        &self.0 .1
    }

    pub fn contours(&self) -> ContourSet {
        self.in_set().union(self.out_set()).cloned().collect()
    }

    fn spans(&self, contours: &ContourSet) -> bool {
        self.in_set().len() + self.out_set().len() == contours.len()
            && self.in_set().iter().chain(self.out_set()).all(|c| contours.contains(c))
    }

    /// Moves `c` to the other side of the partition.
    pub fn adjacent(&self, c: &ContourName) -> Result<Zone, DiagramError> {
        let (mut ins, mut outs) = (self.in_set().clone(), self.out_set().clone());
        if ins.remove(c) {
            outs.insert(c.clone());
        } else if outs.remove(c) {
            ins.insert(c.clone());
        } else {
            return Err(DiagramError::ContourAbsent { contour: c.clone(), context: format!("zone {self}") });
        }
        Ok(Self::of(ins, outs))
    }

    /// Removes `c` from both sides.
    pub fn reduce(&self, c: &ContourName) -> Zone {
        let (mut ins, mut outs) = (self.in_set().clone(), self.out_set().clone());
        ins.remove(c);
        outs.remove(c);
        Self::of(ins, outs)
    }
}

impl Ord for Zone {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (self.in_set(), other.in_set());
        let (x, y) = (self.out_set(), other.out_set());
        a.len().cmp(&b.len()).then_with(|| a.cmp(b)).then_with(|| x.len().cmp(&y.len())).then_with(|| x.cmp(y))
    }
}

impl PartialOrd for Zone {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Zone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = |s: &ContourSet| s.iter().map(|c| c.as_str()).collect::<Vec<_>>().join(",");
        write!(f, "({{{}}},{{{}}})", names(self.in_set()), names(self.out_set()))
    }
}

impl fmt::Debug for Zone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All `2^|contours|` zones over `contours`.
pub fn venn_zones(contours: &ContourSet) -> Result<BTreeSet<Zone>, DiagramError> {
    if contours.len() > MAX_CONTOURS {
        return Err(DiagramError::TooManyContours { count: contours.len() });
    }
    let names: Vec<&ContourName> = contours.iter().collect();
    let mut zones = BTreeSet::new();
    for mask in 0u32..(1 << names.len()) {
        let (mut ins, mut outs) = (ContourSet::new(), ContourSet::new());
        for (i, c) in names.iter().enumerate() {
            if mask & (1 << i) != 0 {
                ins.insert((*c).clone());
            } else {
                outs.insert((*c).clone());
            }
        }
        zones.insert(Zone::of(ins, outs));
    }
    Ok(zones)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Venn,
    PureEuler,
    EulerVenn,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Venn => "Venn",
            Kind::PureEuler => "pure Euler",
            Kind::EulerVenn => "Euler-Venn",
        })
    }
}

#[derive(PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Parts {
    kind: Kind,
    contours: ContourSet,
    visible: BTreeSet<Zone>,
    shaded: BTreeSet<Zone>,
}

/// A unitary diagram: contours, visible zones and shaded zones, tagged by kind.
/// Shared on clone; proofs copy the same diagrams into many sequents.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnitaryDiagram(Arc<Parts>);

impl UnitaryDiagram {
    fn from_parts(kind: Kind, contours: ContourSet, visible: BTreeSet<Zone>, shaded: BTreeSet<Zone>) -> Self {
        Self(Arc::new(Parts { kind, contours, visible, shaded }))
    }

    pub fn new(
        kind: Kind,
        contours: ContourSet,
        visible: BTreeSet<Zone>,
        shaded: BTreeSet<Zone>,
    ) -> Result<Self, DiagramError> {
        if contours.len() > MAX_CONTOURS {
            return Err(DiagramError::TooManyContours { count: contours.len() });
        }
        for z in visible.iter().chain(&shaded) {
            if !z.spans(&contours) {
                return Err(DiagramError::ZoneOutsideContext { zone: z.clone() });
            }
        }
        if let Some(z) = shaded.iter().find(|z| !visible.contains(*z)) {
            return Err(DiagramError::ShadedNotVisible { zone: z.clone() });
        }
        match kind {
            Kind::Venn if visible.len() != 1usize << contours.len() => {
                return Err(DiagramError::VennMissingZone)
            }
            Kind::PureEuler if !shaded.is_empty() => return Err(DiagramError::ShadedPureEuler),
            _ => {}
        }
        Ok(Self::from_parts(kind, contours, visible, shaded))
    }

    pub fn venn(contours: ContourSet, shaded: BTreeSet<Zone>) -> Result<Self, DiagramError> {
        let visible = venn_zones(&contours)?;
        Self::new(Kind::Venn, contours, visible, shaded)
    }

    pub fn pure_euler(contours: ContourSet, visible: BTreeSet<Zone>) -> Result<Self, DiagramError> {
        Self::new(Kind::PureEuler, contours, visible, BTreeSet::new())
    }

    /// A pure Euler diagram described by its missing zones.
    pub fn pure_euler_missing(contours: ContourSet, missing: &BTreeSet<Zone>) -> Result<Self, DiagramError> {
        for z in missing {
            if !z.spans(&contours) {
                return Err(DiagramError::ZoneOutsideContext { zone: z.clone() });
            }
        }
        let visible = venn_zones(&contours)?.into_iter().filter(|z| !missing.contains(z)).collect();
        Self::pure_euler(contours, visible)
    }

    pub fn euler_venn(
        contours: ContourSet,
        visible: BTreeSet<Zone>,
        shaded: BTreeSet<Zone>,
    ) -> Result<Self, DiagramError> {
        Self::new(Kind::EulerVenn, contours, visible, shaded)
    }

    /// The literal `c⁺` (inside shaded) or `c⁻` (outside shaded).
    pub fn literal(c: &ContourName, positive: bool) -> Self {
        let contours: ContourSet = [c.clone()].into();
        let zone = if positive {
            Zone::of(contours.clone(), ContourSet::new())
        } else {
            Zone::of(ContourSet::new(), contours.clone())
        };
        let visible = venn_zones(&contours).expect("one contour");
        Self::from_parts(Kind::Venn, contours, visible, [zone].into())
    }

    /// The zero-contour Venn diagram with its only zone shaded.
    pub fn top() -> Self {
        let empty = Zone::of(ContourSet::new(), ContourSet::new());
        Self::from_parts(Kind::Venn, ContourSet::new(), [empty.clone()].into(), [empty].into())
    }

    /// The zero-contour Venn diagram with nothing shaded.
    pub fn bottom() -> Self {
        let empty = Zone::of(ContourSet::new(), ContourSet::new());
        Self::from_parts(Kind::Venn, ContourSet::new(), [empty].into(), BTreeSet::new())
    }

    pub fn kind(&self) -> Kind {
        self.0.kind
    }

    pub fn contours(&self) -> &ContourSet {
        &self.0.contours
    }

    pub fn visible_zones(&self) -> &BTreeSet<Zone> {
        &self.0.visible
    }

    pub fn shaded_zones(&self) -> &BTreeSet<Zone> {
        &self.0.shaded
    }

    pub fn missing_zones(&self) -> BTreeSet<Zone> {
        venn_zones(&self.0.contours)
            .expect("validated contour count")
            .into_iter()
            .filter(|z| !self.0.visible.contains(z))
            .collect()
    }

    /// `Some((c, positive))` if this is a literal.
    pub fn as_literal(&self) -> Option<(&ContourName, bool)> {
        if self.0.kind != Kind::Venn || self.0.contours.len() != 1 || self.0.shaded.len() != 1 {
            return None;
        }
        let c = self.0.contours.iter().next()?;
        let z = self.0.shaded.iter().next()?;
        Some((c, z.in_set().contains(c)))
    }

    pub fn is_positive_literal(&self) -> bool {
        matches!(self.as_literal(), Some((_, true)))
    }

    pub fn is_bottom(&self) -> bool {
        self.0.kind == Kind::Venn && self.0.contours.is_empty() && self.0.shaded.is_empty()
    }

    pub fn is_top(&self) -> bool {
        self.0.kind == Kind::Venn && self.0.contours.is_empty() && self.0.shaded.len() == 1
    }

    /// Diagrams that close a sequent from the antecedent: any Venn diagram
    /// with no shading, and the empty pure Euler diagram.
    pub fn is_falsum_shape(&self) -> bool {
        match self.0.kind {
            Kind::Venn => self.0.shaded.is_empty(),
            Kind::PureEuler => self.0.contours.is_empty() && self.0.visible.is_empty(),
            Kind::EulerVenn => false,
        }
    }

    /// Diagrams that close a sequent from the succedent: ⊤ and any pure
    /// Euler diagram without missing zones.
    pub fn is_verum_shape(&self) -> bool {
        match self.0.kind {
            Kind::Venn => self.is_top(),
            Kind::PureEuler => self.0.visible.len() == 1usize << self.0.contours.len(),
            Kind::EulerVenn => false,
        }
    }

    fn expect_kind(&self, expected: Kind) -> Result<(), DiagramError> {
        if self.0.kind == expected {
            Ok(())
        } else {
            Err(DiagramError::WrongKind { expected, found: self.0.kind })
        }
    }

    /// The spatial part of an Euler-Venn diagram, shading dropped.
    pub fn euler_part(&self) -> Result<UnitaryDiagram, DiagramError> {
        self.expect_kind(Kind::EulerVenn)?;
        Ok(Self::from_parts(Kind::PureEuler, self.0.contours.clone(), self.0.visible.clone(), BTreeSet::new()))
    }

    /// The shading of an Euler-Venn diagram drawn on a full Venn diagram.
    pub fn venn_part(&self) -> Result<UnitaryDiagram, DiagramError> {
        self.expect_kind(Kind::EulerVenn)?;
        Self::venn(self.0.contours.clone(), self.0.shaded.clone())
    }

    /// Reduction of a pure Euler diagram by `c`: a reduced zone is missing
    /// iff both of its preimages are missing.
    pub fn reduce(&self, c: &ContourName) -> Result<UnitaryDiagram, DiagramError> {
        self.expect_kind(Kind::PureEuler)?;
        if !self.0.contours.contains(c) {
            return Err(DiagramError::ContourAbsent { contour: c.clone(), context: "the diagram".into() });
        }
        let mut contours = self.0.contours.clone();
        contours.remove(c);
        let visible = self.0.visible.iter().map(|z| z.reduce(c)).collect();
        Self::pure_euler(contours, visible)
    }

    /// The contour set used by the reduction rules, or the empty set when the
    /// side condition fails (some missing zone has no missing neighbour).
    pub fn reducible_contours(&self) -> Result<ContourSet, DiagramError> {
        self.expect_kind(Kind::PureEuler)?;
        let missing = self.missing_zones();
        let condition = missing.iter().all(|z| {
            self.0.contours.iter().any(|c| missing.contains(&z.adjacent(c).expect("contour of the zone")))
        });
        if missing.is_empty() || !condition {
            return Ok(ContourSet::new());
        }
        let mut out = ContourSet::new();
        for c in &self.0.contours {
            if !self.reduce(c)?.missing_zones().is_empty() {
                out.insert(c.clone());
            }
        }
        Ok(out)
    }

    /// Splits the shading of a Venn diagram into `part` and the rest.
    pub fn sep_split(&self, part: &BTreeSet<Zone>) -> Result<(UnitaryDiagram, UnitaryDiagram), DiagramError> {
        self.expect_kind(Kind::Venn)?;
        let (a, b) = proper_split(&self.0.shaded, part)?;
        Ok((self.with_shading(a), self.with_shading(b)))
    }

    /// Splits the missing zones of a pure Euler diagram into `part` and the rest.
    pub fn mz_split(&self, part: &BTreeSet<Zone>) -> Result<(UnitaryDiagram, UnitaryDiagram), DiagramError> {
        self.expect_kind(Kind::PureEuler)?;
        let missing = self.missing_zones();
        let (a, b) = proper_split(&missing, part)?;
        Ok((self.with_missing(&a), self.with_missing(&b)))
    }

    /// Same contours and kind, shading replaced. Zones must be visible.
    pub(crate) fn with_shading(&self, shaded: BTreeSet<Zone>) -> UnitaryDiagram {
        debug_assert!(shaded.is_subset(&self.0.visible));
        Self::from_parts(self.0.kind, self.0.contours.clone(), self.0.visible.clone(), shaded)
    }

    /// Pure Euler diagram over the same contours with exactly `missing` missing.
    pub(crate) fn with_missing(&self, missing: &BTreeSet<Zone>) -> UnitaryDiagram {
        Self::pure_euler_missing(self.0.contours.clone(), missing).expect("zones of the same context")
    }
}

fn proper_split(
    all: &BTreeSet<Zone>,
    part: &BTreeSet<Zone>,
) -> Result<(BTreeSet<Zone>, BTreeSet<Zone>), DiagramError> {
    if all.len() < 2 {
        return Err(DiagramError::NothingToSplit(all.len()));
    }
    if part.is_empty() || part.len() >= all.len() || !part.is_subset(all) {
        return Err(DiagramError::ImproperSplit { available: all.len() });
    }
    Ok((part.clone(), all.difference(part).cloned().collect()))
}

impl fmt::Debug for UnitaryDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::syntax::print_unitary(self))
    }
}

impl fmt::Display for UnitaryDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::syntax::print_unitary(self))
    }
}

/// A compound diagram: a tree of unitary diagrams under ∧, ∨ and ⇒.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Diagram {
    Unitary(UnitaryDiagram),
    And(Arc<Diagram>, Arc<Diagram>),
    Or(Arc<Diagram>, Arc<Diagram>),
    Implies(Arc<Diagram>, Arc<Diagram>),
}

impl Diagram {
    pub fn and(l: Diagram, r: Diagram) -> Diagram {
        Diagram::And(Arc::new(l), Arc::new(r))
    }

    pub fn or(l: Diagram, r: Diagram) -> Diagram {
        Diagram::Or(Arc::new(l), Arc::new(r))
    }

    pub fn implies(l: Diagram, r: Diagram) -> Diagram {
        Diagram::Implies(Arc::new(l), Arc::new(r))
    }

    pub fn literal(c: &ContourName, positive: bool) -> Diagram {
        Diagram::Unitary(UnitaryDiagram::literal(c, positive))
    }

    pub fn top() -> Diagram {
        Diagram::Unitary(UnitaryDiagram::top())
    }

    pub fn bottom() -> Diagram {
        Diagram::Unitary(UnitaryDiagram::bottom())
    }

    pub fn as_unitary(&self) -> Option<&UnitaryDiagram> {
        match self {
            Diagram::Unitary(d) => Some(d),
            _ => None,
        }
    }

    pub fn contours(&self) -> ContourSet {
        let mut out = ContourSet::new();
        self.collect_contours(&mut out);
        out
    }

    fn collect_contours(&self, out: &mut ContourSet) {
        match self {
            Diagram::Unitary(d) => out.extend(d.contours().iter().cloned()),
            Diagram::And(l, r) | Diagram::Or(l, r) | Diagram::Implies(l, r) => {
                l.collect_contours(out);
                r.collect_contours(out);
            }
        }
    }

    /// Nesting depth of connectives; unitary diagrams have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Diagram::Unitary(_) => 0,
            Diagram::And(l, r) | Diagram::Or(l, r) | Diagram::Implies(l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    /// The weight measure driving the generalized-axiom construction.
    pub fn weight(&self) -> usize {
        match self {
            Diagram::Unitary(d) => unitary_weight(d),
            Diagram::And(l, r) | Diagram::Or(l, r) | Diagram::Implies(l, r) => l.weight() + r.weight() + 1,
        }
    }
}

fn unitary_weight(d: &UnitaryDiagram) -> usize {
    if d.is_bottom() {
        return 0;
    }
    if let Some((_, positive)) = d.as_literal() {
        return if positive { 0 } else { 1 };
    }
    match d.kind() {
        Kind::Venn => d.shaded_zones().len() + 1,
        Kind::PureEuler => d.missing_zones().len() + 1,
        Kind::EulerVenn => {
            let e = d.euler_part().expect("Euler-Venn");
            let v = d.venn_part().expect("Euler-Venn");
            unitary_weight(&e) + unitary_weight(&v) + 1
        }
    }
}

impl From<UnitaryDiagram> for Diagram {
    fn from(d: UnitaryDiagram) -> Self {
        Diagram::Unitary(d)
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::print_diagram(self))
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::print_diagram(self))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

/// A sequent `Γ ⊢ Δ` over multisets, stored sorted.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sequent {
    antecedent: Vec<Diagram>,
    succedent: Vec<Diagram>,
}

impl Sequent {
    pub fn new(mut antecedent: Vec<Diagram>, mut succedent: Vec<Diagram>) -> Self {
        antecedent.sort();
        succedent.sort();
        Self { antecedent, succedent }
    }

    pub fn antecedent(&self) -> &[Diagram] {
        &self.antecedent
    }

    pub fn succedent(&self) -> &[Diagram] {
        &self.succedent
    }

    pub fn side(&self, side: Side) -> &[Diagram] {
        match side {
            Side::Left => &self.antecedent,
            Side::Right => &self.succedent,
        }
    }

    pub fn contours(&self) -> ContourSet {
        let mut out = ContourSet::new();
        for d in self.antecedent.iter().chain(&self.succedent) {
            d.collect_contours(&mut out);
        }
        out
    }

    pub fn count(&self, side: Side, d: &Diagram) -> usize {
        self.side(side).iter().filter(|x| *x == d).count()
    }

    /// Adds one copy of `d` to `side`.
    pub fn with(&self, side: Side, d: Diagram) -> Sequent {
        let mut s = self.clone();
        let v = match side {
            Side::Left => &mut s.antecedent,
            Side::Right => &mut s.succedent,
        };
        let at = v.partition_point(|x| *x <= d);
        v.insert(at, d);
        s
    }

    /// Removes one copy of `d` from `side`, if present.
    pub fn without(&self, side: Side, d: &Diagram) -> Option<Sequent> {
        let mut s = self.clone();
        let v = match side {
            Side::Left => &mut s.antecedent,
            Side::Right => &mut s.succedent,
        };
        let at = v.iter().position(|x| x == d)?;
        v.remove(at);
        Some(s)
    }

    /// The same sequent with duplicates removed on both sides.
    pub fn deduplicated(&self) -> Sequent {
        let mut s = self.clone();
        s.antecedent.dedup();
        s.succedent.dedup();
        s
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::print_sequent(self))
    }
}

impl fmt::Debug for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::print_sequent(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(s: &str) -> ContourName {
        ContourName::new(s).unwrap()
    }

    fn cs(s: &str) -> ContourSet {
        contour_set(s).unwrap()
    }

    fn zone(ins: &str, outs: &str) -> Zone {
        Zone::new(cs(ins), cs(outs)).unwrap()
    }

    fn d_c_star() -> UnitaryDiagram {
        let missing = [zone("a", "b c"), zone("a c", "b"), zone("b c", "a"), zone("a b c", "")].into();
        UnitaryDiagram::pure_euler_missing(cs("a b c"), &missing).unwrap()
    }

    #[test]
    fn venn_zone_counts() {
        assert_eq!(venn_zones(&cs("")).unwrap(), [zone("", "")].into());
        assert_eq!(venn_zones(&cs("a")).unwrap(), [zone("", "a"), zone("a", "")].into());
        assert_eq!(venn_zones(&cs("a b c")).unwrap().len(), 8);
        let many: ContourSet = (0..17).map(|i| n(&format!("c{i}"))).collect();
        assert_eq!(venn_zones(&many), Err(DiagramError::TooManyContours { count: 17 }));
    }

    #[test]
    fn zones_order_short_lex() {
        let order: Vec<_> = venn_zones(&cs("a b")).unwrap().into_iter().collect();
        assert_eq!(order, vec![zone("", "a b"), zone("a", "b"), zone("b", "a"), zone("a b", "")]);
    }

    #[test]
    fn missing_zones_of_fixture() {
        let d = d_c_star();
        assert_eq!(
            d.missing_zones(),
            [zone("a", "b c"), zone("a c", "b"), zone("b c", "a"), zone("a b c", "")].into()
        );
        let venn = UnitaryDiagram::venn(cs("a b"), BTreeSet::new()).unwrap();
        assert!(venn.missing_zones().is_empty());
        let empty = UnitaryDiagram::pure_euler(cs(""), BTreeSet::new()).unwrap();
        assert_eq!(empty.missing_zones(), [zone("", "")].into());
    }

    #[test]
    fn adjacency_and_reduction() {
        assert_eq!(zone("a", "b c").adjacent(&n("c")).unwrap(), zone("a c", "b"));
        assert_eq!(zone("a", "").adjacent(&n("a")).unwrap(), zone("", "a"));
        let z = zone("a b", "c");
        assert_eq!(z.adjacent(&n("b")).unwrap().adjacent(&n("b")).unwrap(), z);
        assert!(z.adjacent(&n("d")).is_err());
        assert_eq!(zone("a c", "b").reduce(&n("c")), zone("a", "b"));
        assert_eq!(zone("a", "b c").reduce(&n("c")), zone("a", "b"));
    }

    #[test]
    fn reduce_fixture_diagram() {
        let d = d_c_star();
        assert_eq!(d.reduce(&n("c")).unwrap().missing_zones(), [zone("a", "b")].into());
        assert_eq!(d.reduce(&n("b")).unwrap().missing_zones(), [zone("a c", "")].into());
        assert_eq!(d.reduce(&n("a")).unwrap().missing_zones(), [zone("b c", "")].into());
        assert_eq!(d.reducible_contours().unwrap(), cs("a b c"));
        assert!(d.reduce(&n("z")).is_err());
        let subset = UnitaryDiagram::pure_euler_missing(cs("a b"), &[zone("a", "b")].into()).unwrap();
        assert!(subset.reducible_contours().unwrap().is_empty());
        let full = UnitaryDiagram::pure_euler(cs("a b"), venn_zones(&cs("a b")).unwrap()).unwrap();
        assert!(full.reducible_contours().unwrap().is_empty());
        assert!(UnitaryDiagram::top().reduce(&n("a")).is_err());
    }

    #[test]
    fn projections() {
        let visible = [zone("", "a c"), zone("a", "c"), zone("c", "a")].into();
        let d_a = UnitaryDiagram::euler_venn(cs("a c"), visible, [zone("c", "a")].into()).unwrap();
        assert_eq!(d_a.euler_part().unwrap().missing_zones(), [zone("a c", "")].into());
        let v = d_a.venn_part().unwrap();
        assert_eq!(v.kind(), Kind::Venn);
        assert_eq!(v.shaded_zones(), &[zone("c", "a")].into());
        assert!(v.euler_part().is_err());
    }

    #[test]
    fn literals_and_weights() {
        let a = n("a");
        let pos = UnitaryDiagram::literal(&a, true);
        assert_eq!(pos.shaded_zones(), &[zone("a", "")].into());
        assert_eq!(UnitaryDiagram::literal(&a, false).shaded_zones(), &[zone("", "a")].into());
        assert_ne!(pos, UnitaryDiagram::literal(&n("b"), true));
        assert_eq!(Diagram::bottom().weight(), 0);
        assert_eq!(Diagram::literal(&a, true).weight(), 0);
        assert_eq!(Diagram::literal(&a, false).weight(), 1);
        let lem = UnitaryDiagram::venn(cs("a"), venn_zones(&cs("a")).unwrap()).unwrap();
        assert_eq!(Diagram::from(lem).weight(), 3);
        assert_eq!(Diagram::top().weight(), 2);
    }

    #[test]
    fn splits() {
        let lem = UnitaryDiagram::venn(cs("a"), venn_zones(&cs("a")).unwrap()).unwrap();
        let (l, r) = lem.sep_split(&[zone("a", "")].into()).unwrap();
        assert_eq!(l, UnitaryDiagram::literal(&n("a"), true));
        assert_eq!(r, UnitaryDiagram::literal(&n("a"), false));
        assert!(lem.sep_split(lem.shaded_zones()).is_err());
        assert!(lem.sep_split(&BTreeSet::new()).is_err());

        let d = d_c_star();
        let (l, r) = d.mz_split(&[zone("a", "b c")].into()).unwrap();
        assert_eq!(l.missing_zones().len(), 1);
        assert_eq!(r.missing_zones().len(), 3);
        let union: BTreeSet<_> = l.missing_zones().union(&r.missing_zones()).cloned().collect();
        assert_eq!(union, d.missing_zones());
        assert!(d.mz_split(&BTreeSet::new()).is_err());
    }

    #[test]
    fn validation() {
        assert!(UnitaryDiagram::new(Kind::PureEuler, cs("a"), venn_zones(&cs("a")).unwrap(), [zone("a", "")].into())
            .is_err());
        assert!(UnitaryDiagram::euler_venn(cs("a"), [zone("", "a")].into(), [zone("a", "")].into()).is_err());
        assert!(UnitaryDiagram::new(Kind::Venn, cs("a"), [zone("a", "")].into(), BTreeSet::new()).is_err());
        assert!(UnitaryDiagram::venn(cs("a"), [zone("b", "")].into()).is_err());
        assert!(ContourName::new("1a").is_err());
        assert!(Zone::new(cs("a"), cs("a")).is_err());
    }

    #[test]
    fn sequent_multiset_ops() {
        let a = Diagram::literal(&n("a"), true);
        let s = Sequent::new(vec![a.clone(), a.clone()], vec![]);
        assert_eq!(s.count(Side::Left, &a), 2);
        let t = s.without(Side::Left, &a).unwrap();
        assert_eq!(t.count(Side::Left, &a), 1);
        assert_eq!(t.with(Side::Left, a.clone()), s);
        assert_eq!(s.deduplicated(), t);
    }
}
