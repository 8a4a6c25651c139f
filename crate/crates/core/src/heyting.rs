//! Finite Heyting algebras as explicit operation tables.

use std::fmt;

use thiserror::Error;

/// Largest algebra any constructor will build.
pub const MAX_ALGEBRA_SIZE: usize = 64;
/// Largest poset `enumerate_posets` accepts.
pub const MAX_ENUMERATED_POSET: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Law {
    Reflexivity,
    Antisymmetry,
    Transitivity,
    MeetExists,
    JoinExists,
    Bottom,
    Top,
    MeetIsGreatestLowerBound,
    JoinIsLeastUpperBound,
    Distributivity,
    Residuation,
    ModusPonens,
    ImplicationAbsorption,
    Currying,
    ImplicationTopIffLeq,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Law::Reflexivity => "reflexivity",
            Law::Antisymmetry => "antisymmetry",
            Law::Transitivity => "transitivity",
            Law::MeetExists => "existence of meets",
            Law::JoinExists => "existence of joins",
            Law::Bottom => "least element",
            Law::Top => "greatest element",
            Law::MeetIsGreatestLowerBound => "meet is the greatest lower bound",
            Law::JoinIsLeastUpperBound => "join is the least upper bound",
            Law::Distributivity => "distributivity",
            Law::Residuation => "residuation",
            Law::ModusPonens => "a & (a -> b) <= b",
            Law::ImplicationAbsorption => "(a -> b) & b = b",
            Law::Currying => "a -> (b -> c) = (a & b) -> c",
            Law::ImplicationTopIffLeq => "a -> b = 1 iff a <= b",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("{size} elements exceed the cap of {cap}")]
    Capacity { size: usize, cap: usize },
    #[error("{0}")]
    Domain(String),
    #[error("law `{law}` fails at {witness:?}")]
    LawFailure { law: Law, witness: Vec<usize> },
}

/// A finite partial order on `0..size`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinitePoset {
    size: usize,
    leq: Vec<bool>,
}

impl FinitePoset {
    /// Validates a row-major `size × size` order table.
    pub fn new(size: usize, leq: Vec<bool>) -> Result<Self, AlgebraError> {
        if leq.len() != size * size {
            return Err(AlgebraError::Domain(format!("order table has {} entries, expected {}", leq.len(), size * size)));
        }
        check_partial_order(size, &|a, b| leq[a * size + b])?;
        Ok(Self { size, leq })
    }

    /// The reflexive-transitive closure of `i < j` pairs.
    pub fn from_pairs(size: usize, pairs: &[(usize, usize)]) -> Result<Self, AlgebraError> {
        let mut leq = vec![false; size * size];
        for i in 0..size {
            leq[i * size + i] = true;
        }
        for &(i, j) in pairs {
            if i >= size || j >= size {
                return Err(AlgebraError::Domain(format!("pair {i}<{j} outside a poset of size {size}")));
            }
            leq[i * size + j] = true;
        }
        for k in 0..size {
            for i in 0..size {
                if leq[i * size + k] {
                    for j in 0..size {
                        if leq[k * size + j] {
                            leq[i * size + j] = true;
                        }
                    }
                }
            }
        }
        Self::new(size, leq)
    }

    pub fn chain(size: usize) -> Self {
        let pairs: Vec<_> = (1..size).map(|i| (i - 1, i)).collect();
        Self::from_pairs(size, &pairs).expect("a chain is a partial order")
    }

    pub fn antichain(size: usize) -> Self {
        Self::from_pairs(size, &[]).expect("discrete order")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.size + b]
    }

    /// The covering pairs `i < j` with nothing strictly in between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.size;
        let lt = |a: usize, b: usize| a != b && self.leq(a, b);
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if lt(i, j) && !(0..n).any(|k| lt(i, k) && lt(k, j)) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

impl fmt::Debug for FinitePoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Prints as `N:i<j,...` over the covering pairs.
impl fmt::Display for FinitePoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self.covers().iter().map(|(i, j)| format!("{i}<{j}")).collect();
        write!(f, "{}:{}", self.size, pairs.join(","))
    }
}

fn check_partial_order(size: usize, leq: &dyn Fn(usize, usize) -> bool) -> Result<(), AlgebraError> {
    for a in 0..size {
        if !leq(a, a) {
            return Err(AlgebraError::LawFailure { law: Law::Reflexivity, witness: vec![a] });
        }
    }
    for a in 0..size {
        for b in 0..size {
            if a != b && leq(a, b) && leq(b, a) {
                return Err(AlgebraError::LawFailure { law: Law::Antisymmetry, witness: vec![a, b] });
            }
            if leq(a, b) {
                for c in 0..size {
                    if leq(b, c) && !leq(a, c) {
                        return Err(AlgebraError::LawFailure { law: Law::Transitivity, witness: vec![a, b, c] });
                    }
                }
            }
        }
    }
    Ok(())
}

/// Lazily yields every partial order on `n` labelled points.
pub struct PosetIter {
    n: usize,
    pairs: Vec<(usize, usize)>,
    next_mask: u64,
    end: u64,
}

impl Iterator for PosetIter {
    type Item = FinitePoset;

    fn next(&mut self) -> Option<FinitePoset> {
        let n = self.n;
        while self.next_mask < self.end {
            let mask = self.next_mask;
            self.next_mask += 1;
            let mut lt = vec![false; n * n];
            for (bit, &(i, j)) in self.pairs.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    lt[i * n + j] = true;
                }
            }
            let antisymmetric = (0..n).all(|i| (0..n).all(|j| !(lt[i * n + j] && lt[j * n + i])));
            let transitive = antisymmetric
                && (0..n).all(|i| {
                    (0..n).all(|j| !lt[i * n + j] || (0..n).all(|k| !lt[j * n + k] || lt[i * n + k]))
                });
            if transitive {
                for i in 0..n {
                    lt[i * n + i] = true;
                }
                return Some(FinitePoset { size: n, leq: lt });
            }
        }
        None
    }
}

/// Every partial order on `n ≤ 5` labelled points, each exactly once.
pub fn enumerate_posets(n: usize) -> Result<PosetIter, AlgebraError> {
    if n > MAX_ENUMERATED_POSET {
        return Err(AlgebraError::Capacity { size: n, cap: MAX_ENUMERATED_POSET });
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    let end = 1u64 << pairs.len();
    Ok(PosetIter { n, pairs, next_mask: 0, end })
}

/// A finite Heyting algebra on elements `0..size`.
#[derive(Clone)]
pub struct HeytingAlgebra {
    size: usize,
    leq: Vec<bool>,
    meet: Vec<usize>,
    join: Vec<usize>,
    imp: Vec<usize>,
    bottom: usize,
    top: usize,
    name: String,
}

impl HeytingAlgebra {
    /// Builds the algebra of a bounded distributive lattice given by its order.
    pub fn from_order(size: usize, leq: &[bool]) -> Result<Self, AlgebraError> {
        if size == 0 {
            return Err(AlgebraError::Domain("an algebra needs at least one element".into()));
        }
        if size > MAX_ALGEBRA_SIZE {
            return Err(AlgebraError::Capacity { size, cap: MAX_ALGEBRA_SIZE });
        }
        if leq.len() != size * size {
            return Err(AlgebraError::Domain(format!("order table has {} entries, expected {}", leq.len(), size * size)));
        }
        let le = |a: usize, b: usize| leq[a * size + b];
        check_partial_order(size, &le)?;
        let bottom = (0..size)
            .find(|&a| (0..size).all(|b| le(a, b)))
            .ok_or(AlgebraError::LawFailure { law: Law::Bottom, witness: vec![] })?;
        let top = (0..size)
            .find(|&a| (0..size).all(|b| le(b, a)))
            .ok_or(AlgebraError::LawFailure { law: Law::Top, witness: vec![] })?;
        let mut meet = vec![0; size * size];
        let mut join = vec![0; size * size];
        for a in 0..size {
            for b in 0..size {
                let lower: Vec<usize> = (0..size).filter(|&c| le(c, a) && le(c, b)).collect();
                meet[a * size + b] = *lower
                    .iter()
                    .find(|&&c| lower.iter().all(|&d| le(d, c)))
                    .ok_or(AlgebraError::LawFailure { law: Law::MeetExists, witness: vec![a, b] })?;
                let upper: Vec<usize> = (0..size).filter(|&c| le(a, c) && le(b, c)).collect();
                join[a * size + b] = *upper
                    .iter()
                    .find(|&&c| upper.iter().all(|&d| le(c, d)))
                    .ok_or(AlgebraError::LawFailure { law: Law::JoinExists, witness: vec![a, b] })?;
            }
        }
        for a in 0..size {
            for b in 0..size {
                for c in 0..size {
                    let l = meet[a * size + join[b * size + c]];
                    let r = join[meet[a * size + b] * size + meet[a * size + c]];
                    if l != r {
                        return Err(AlgebraError::LawFailure { law: Law::Distributivity, witness: vec![a, b, c] });
                    }
                }
            }
        }
        // In a finite distributive lattice the join of {c | c∧a ≤ b} is itself in the set.
        let mut imp = vec![0; size * size];
        for a in 0..size {
            for b in 0..size {
                let mut acc = bottom;
                for c in 0..size {
                    if le(meet[c * size + a], b) {
                        acc = join[acc * size + c];
                    }
                }
                imp[a * size + b] = acc;
            }
        }
        let algebra = Self { size, leq: leq.to_vec(), meet, join, imp, bottom, top, name: format!("order:{size}") };
        if let Some(v) = algebra.verify_laws().violations.into_iter().next() {
            return Err(AlgebraError::LawFailure { law: v.law, witness: v.witness });
        }
        Ok(algebra)
    }

    /// Raw tables without any checking, for fault-injection tests.
    #[allow(clippy::too_many_arguments)]
    pub fn from_tables_unchecked(
        size: usize,
        leq: Vec<bool>,
        meet: Vec<usize>,
        join: Vec<usize>,
        imp: Vec<usize>,
        bottom: usize,
        top: usize,
    ) -> Self {
        Self { size, leq, meet, join, imp, bottom, top, name: format!("tables:{size}") }
    }

    /// The Gödel chain `0 < 1 < … < n-1`.
    pub fn chain(n: usize) -> Result<Self, AlgebraError> {
        if n == 0 {
            return Err(AlgebraError::Domain("chain(0) has no elements".into()));
        }
        if n > MAX_ALGEBRA_SIZE {
            return Err(AlgebraError::Capacity { size: n, cap: MAX_ALGEBRA_SIZE });
        }
        let mut alg = Self::empty_tables(n, format!("chain:{n}"));
        for a in 0..n {
            for b in 0..n {
                let i = a * n + b;
                alg.leq[i] = a <= b;
                alg.meet[i] = a.min(b);
                alg.join[i] = a.max(b);
                alg.imp[i] = if a <= b { n - 1 } else { b };
            }
        }
        alg.top = n - 1;
        Ok(alg)
    }

    /// The algebra of up-closed subsets of `p`, ordered by inclusion.
    pub fn upset_algebra(p: &FinitePoset) -> Result<Self, AlgebraError> {
        let n = p.size();
        if n > 16 {
            return Err(AlgebraError::Capacity { size: n, cap: 16 });
        }
        let up_closed = |u: u32| (0..n).all(|i| u & (1 << i) == 0 || (0..n).all(|j| !p.leq(i, j) || u & (1 << j) != 0));
        let sets: Vec<u32> = (0..1u32 << n).filter(|&u| up_closed(u)).collect();
        let size = sets.len();
        if size > MAX_ALGEBRA_SIZE {
            return Err(AlgebraError::Capacity { size, cap: MAX_ALGEBRA_SIZE });
        }
        let index = |u: u32| sets.binary_search(&u).expect("up-sets are closed under the operations");
        let mut alg = Self::empty_tables(size, format!("poset:{p}"));
        for (a, &u) in sets.iter().enumerate() {
            for (b, &v) in sets.iter().enumerate() {
                let i = a * size + b;
                alg.leq[i] = u & !v == 0;
                alg.meet[i] = index(u & v);
                alg.join[i] = index(u | v);
                // Largest up-set W with W ∩ U ⊆ V: the points whose up-set avoids U \ V.
                let w = (0..n)
                    .filter(|&x| (0..n).all(|y| !p.leq(x, y) || u & (1 << y) == 0 || v & (1 << y) != 0))
                    .fold(0u32, |acc, x| acc | (1 << x));
                alg.imp[i] = index(w);
            }
        }
        alg.bottom = index(0);
        alg.top = index(((1u64 << n) - 1) as u32);
        Ok(alg)
    }

    /// Componentwise product; element `(a, b)` has index `a * |B| + b`.
    pub fn product(a: &Self, b: &Self) -> Result<Self, AlgebraError> {
        let size = a.size * b.size;
        if size > MAX_ALGEBRA_SIZE {
            return Err(AlgebraError::Capacity { size, cap: MAX_ALGEBRA_SIZE });
        }
        let mut alg = Self::empty_tables(size, format!("prod:{}*{}", a.name, b.name));
        let pair = |x: usize| (x / b.size, x % b.size);
        for x in 0..size {
            for y in 0..size {
                let ((xa, xb), (ya, yb)) = (pair(x), pair(y));
                let i = x * size + y;
                alg.leq[i] = a.leq(xa, ya) && b.leq(xb, yb);
                alg.meet[i] = a.meet(xa, ya) * b.size + b.meet(xb, yb);
                alg.join[i] = a.join(xa, ya) * b.size + b.join(xb, yb);
                alg.imp[i] = a.imp(xa, ya) * b.size + b.imp(xb, yb);
            }
        }
        alg.bottom = a.bottom * b.size + b.bottom;
        alg.top = a.top * b.size + b.top;
        Ok(alg)
    }

    fn empty_tables(size: usize, name: String) -> Self {
        Self {
            size,
            leq: vec![false; size * size],
            meet: vec![0; size * size],
            join: vec![0; size * size],
            imp: vec![0; size * size],
            bottom: 0,
            top: 0,
            name,
        }
    }

    /// A spec-like label describing how the algebra was built.
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.size + b]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.size + b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.size + b]
    }

    pub fn imp(&self, a: usize, b: usize) -> usize {
        self.imp[a * self.size + b]
    }

    pub fn neg(&self, a: usize) -> usize {
        self.imp(a, self.bottom)
    }

    pub fn meet_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn join_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// Checks every algebra law over all element triples.
    pub fn verify_laws(&self) -> LawReport {
        let n = self.size;
        let mut report = LawReport::default();
        let mut fail = |law: Law, witness: Vec<usize>| report.push(law, witness);
        let el = 0..n;
        if self.bottom >= n || self.top >= n {
            fail(Law::Bottom, vec![self.bottom, self.top]);
            return report;
        }
        for a in el.clone() {
            if !self.leq(a, a) {
                fail(Law::Reflexivity, vec![a]);
            }
            if !self.leq(self.bottom, a) {
                fail(Law::Bottom, vec![a]);
            }
            if !self.leq(a, self.top) {
                fail(Law::Top, vec![a]);
            }
        }
        for a in el.clone() {
            for b in el.clone() {
                if a != b && self.leq(a, b) && self.leq(b, a) {
                    fail(Law::Antisymmetry, vec![a, b]);
                }
                let (m, j, i) = (self.meet(a, b), self.join(a, b), self.imp(a, b));
                if m >= n || j >= n || i >= n {
                    fail(Law::MeetExists, vec![a, b]);
                    continue;
                }
                if !self.leq(m, a) || !self.leq(m, b) {
                    fail(Law::MeetIsGreatestLowerBound, vec![a, b]);
                }
                if !self.leq(a, j) || !self.leq(b, j) {
                    fail(Law::JoinIsLeastUpperBound, vec![a, b]);
                }
                if (i == self.top) != self.leq(a, b) {
                    fail(Law::ImplicationTopIffLeq, vec![a, b]);
                }
                if !self.leq(self.meet(a, i), b) {
                    fail(Law::ModusPonens, vec![a, b]);
                }
                if self.meet(i, b) != b {
                    fail(Law::ImplicationAbsorption, vec![a, b]);
                }
                for c in el.clone() {
                    if self.leq(a, b) && self.leq(b, c) && !self.leq(a, c) {
                        fail(Law::Transitivity, vec![a, b, c]);
                    }
                    if self.leq(c, a) && self.leq(c, b) && !self.leq(c, m) {
                        fail(Law::MeetIsGreatestLowerBound, vec![a, b, c]);
                    }
                    if self.leq(a, c) && self.leq(b, c) && !self.leq(j, c) {
                        fail(Law::JoinIsLeastUpperBound, vec![a, b, c]);
                    }
                    if self.meet(a, self.join(b, c)) != self.join(self.meet(a, b), self.meet(a, c)) {
                        fail(Law::Distributivity, vec![a, b, c]);
                    }
                    if self.leq(self.meet(c, a), b) != self.leq(c, i) {
                        fail(Law::Residuation, vec![c, a, b]);
                    }
                    if self.imp(a, self.imp(b, c)) != self.imp(self.meet(a, b), c) {
                        fail(Law::Currying, vec![a, b, c]);
                    }
                }
            }
        }
        report
    }

    /// Whether some order isomorphism maps `self` onto `other`.
    pub fn is_isomorphic(&self, other: &Self) -> bool {
        if self.size != other.size {
            return false;
        }
        let profile = |alg: &Self, a: usize| {
            let below = (0..alg.size).filter(|&b| alg.leq(b, a)).count();
            let above = (0..alg.size).filter(|&b| alg.leq(a, b)).count();
            (below, above)
        };
        let mut map = vec![usize::MAX; self.size];
        let mut used = vec![false; self.size];
        fn extend(
            x: &HeytingAlgebra,
            y: &HeytingAlgebra,
            i: usize,
            map: &mut Vec<usize>,
            used: &mut Vec<bool>,
            profile: &dyn Fn(&HeytingAlgebra, usize) -> (usize, usize),
        ) -> bool {
            if i == x.size {
                return true;
            }
            for j in 0..y.size {
                if used[j] || profile(x, i) != profile(y, j) {
                    continue;
                }
                let consistent =
                    (0..i).all(|k| x.leq(k, i) == y.leq(map[k], j) && x.leq(i, k) == y.leq(j, map[k]));
                if consistent {
                    map[i] = j;
                    used[j] = true;
                    if extend(x, y, i + 1, map, used, profile) {
                        return true;
                    }
                    used[j] = false;
                }
            }
            false
        }
        extend(self, other, 0, &mut map, &mut used, &profile)
    }
}

impl fmt::Debug for HeytingAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HeytingAlgebra({}, {} elements)", self.name, self.size)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawViolation {
    pub law: Law,
    pub witness: Vec<usize>,
}

impl fmt::Display for LawViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at {:?}", self.law, self.witness)
    }
}

/// Outcome of `verify_laws`; an empty report means every law holds.
#[derive(Debug, Clone, Default)]
pub struct LawReport {
    pub violations: Vec<LawViolation>,
}

impl LawReport {
    const LIMIT: usize = 100;

    fn push(&mut self, law: Law, witness: Vec<usize>) {
        if self.violations.len() < Self::LIMIT {
            self.violations.push(LawViolation { law, witness });
        }
    }

    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}
