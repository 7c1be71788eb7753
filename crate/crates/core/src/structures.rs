//! Finite averaging groups given by tables, and the structure they carry.
//!
//! Every check here is exhaustive over the carrier, so a passing verdict is a
//! proof for that table. Elements are referred to by their index.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::avgroup::AveragingGroup;
use crate::words::OperatedGroup;

/// Largest carrier accepted by default for table validation.
pub const DEFAULT_VALIDATION_CAP: usize = 24;
/// Largest carrier accepted by default for exhaustive operator search.
pub const DEFAULT_SEARCH_CAP: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StructureError {
    Empty,
    TooLarge {
        order: usize,
        cap: usize,
    },
    /// The table is not `n × n`, or an entry is not an element index.
    Malformed(String),
    DuplicateName(String),
    NotAssociative {
        a: usize,
        b: usize,
        c: usize,
    },
    NoIdentity,
    NoInverse {
        a: usize,
    },
    /// The operator table does not have one entry per element, or points
    /// outside the carrier.
    BadOperator(String),
    NotAveraging(AveragingFailure),
    NotCentral {
        z: usize,
    },
    NotHomomorphism {
        a: usize,
        b: usize,
    },
    NotIdempotent {
        a: usize,
    },
    NonCommuting {
        a: usize,
    },
}

impl fmt::Display for StructureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureError::Empty => f.write_str("the carrier is empty"),
            StructureError::TooLarge { order, cap } => write!(f, "carrier of order {order} exceeds the cap {cap}"),
            StructureError::Malformed(m) => write!(f, "malformed table: {m}"),
            StructureError::DuplicateName(n) => write!(f, "duplicate element name {n:?}"),
            StructureError::NotAssociative { a, b, c } => write!(f, "associativity fails at ({a}, {b}, {c})"),
            StructureError::NoIdentity => f.write_str("no two-sided identity element"),
            StructureError::NoInverse { a } => write!(f, "element {a} has no inverse"),
            StructureError::BadOperator(m) => write!(f, "malformed operator: {m}"),
            StructureError::NotAveraging(e) => fmt::Display::fmt(e, f),
            StructureError::NotCentral { z } => write!(f, "element {z} is not central"),
            StructureError::NotHomomorphism { a, b } => write!(f, "map is not a homomorphism at ({a}, {b})"),
            StructureError::NotIdempotent { a } => write!(f, "map is not idempotent at {a}"),
            StructureError::NonCommuting { a } => write!(f, "operators do not commute at {a}"),
        }
    }
}

impl core::error::Error for StructureError {}

/// A finite group given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    names: Vec<String>,
    table: Vec<usize>,
    identity: usize,
    inv: Vec<usize>,
}

impl FiniteGroup {
    /// Validates the group axioms; identity and inverses are inferred.
    pub fn new(names: Vec<String>, mul: Vec<Vec<usize>>) -> Result<FiniteGroup, StructureError> {
        FiniteGroup::with_cap(names, mul, DEFAULT_VALIDATION_CAP)
    }

    pub fn with_cap(names: Vec<String>, mul: Vec<Vec<usize>>, cap: usize) -> Result<FiniteGroup, StructureError> {
        let n = names.len();
        if n == 0 {
            return Err(StructureError::Empty);
        }
        if n > cap {
            return Err(StructureError::TooLarge { order: n, cap });
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(StructureError::DuplicateName(a.clone()));
            }
        }
        if mul.len() != n {
            return Err(StructureError::Malformed(alloc::format!("{} rows for {n} elements", mul.len())));
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in mul.iter().enumerate() {
            if row.len() != n {
                return Err(StructureError::Malformed(alloc::format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(StructureError::Malformed(alloc::format!("row {i} contains index {bad}")));
            }
            table.extend_from_slice(row);
        }
        let at = |a: usize, b: usize| table[a * n + b];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(StructureError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        let identity =
            (0..n).find(|&e| (0..n).all(|a| at(e, a) == a && at(a, e) == a)).ok_or(StructureError::NoIdentity)?;
        let mut inv = Vec::with_capacity(n);
        for a in 0..n {
            let b = (0..n)
                .find(|&b| at(a, b) == identity && at(b, a) == identity)
                .ok_or(StructureError::NoInverse { a })?;
            inv.push(b);
        }
        Ok(FiniteGroup { names, table, identity, inv })
    }

    /// Builds a table from a multiplication function on `0..n`.
    pub fn from_fn(names: Vec<String>, mul: impl Fn(usize, usize) -> usize) -> Result<FiniteGroup, StructureError> {
        let n = names.len();
        let rows = (0..n).map(|a| (0..n).map(|b| mul(a, b)).collect()).collect();
        FiniteGroup::new(names, rows)
    }

    /// `ℤ_n` with elements named `0..n`.
    pub fn cyclic(n: usize) -> FiniteGroup {
        let names = (0..n).map(|i| i.to_string()).collect();
        FiniteGroup::from_fn(names, |a, b| (a + b) % n).expect("cyclic group table")
    }

    /// `ℤ_2 × ℤ_2`, with `(a, b)` at index `2a + b`.
    pub fn klein() -> FiniteGroup {
        let names = ["e", "a", "b", "c"].iter().map(|s| s.to_string()).collect();
        FiniteGroup::from_fn(names, |x, y| x ^ y).expect("klein table")
    }

    /// The symmetric group on three letters. Elements, in index order:
    /// `e (12) (13) (23) (123) (132)`; the product `gh` applies `h` first.
    pub fn symmetric3() -> FiniteGroup {
        const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [2, 1, 0], [0, 2, 1], [1, 2, 0], [2, 0, 1]];
        let names = ["e", "(12)", "(13)", "(23)", "(123)", "(132)"].iter().map(|s| s.to_string()).collect();
        FiniteGroup::from_fn(names, |g, h| {
            let composed = [PERMS[g][PERMS[h][0]], PERMS[g][PERMS[h][1]], PERMS[g][PERMS[h][2]]];
            PERMS.iter().position(|p| *p == composed).expect("closed")
        })
        .expect("S3 table")
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn elements(&self) -> core::ops::Range<usize> {
        0..self.order()
    }

    pub fn is_central(&self, z: usize) -> bool {
        self.elements().all(|g| self.mul(z, g) == self.mul(g, z))
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|z| self.is_central(z))
    }

    /// Rows of the multiplication table.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order()).map(|r| r.to_vec()).collect()
    }
}

/// A self-map of a finite carrier, as the list of images.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OperatorTable(pub Vec<usize>);

impl OperatorTable {
    pub fn identity(order: usize) -> OperatorTable {
        OperatorTable((0..order).collect())
    }

    pub fn constant(order: usize, value: usize) -> OperatorTable {
        OperatorTable(alloc::vec![value; order])
    }

    pub fn apply(&self, a: usize) -> usize {
        self.0[a]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &OperatorTable) -> OperatorTable {
        OperatorTable(other.0.iter().map(|&a| self.0[a]).collect())
    }

    fn check_shape(&self, g: &FiniteGroup) -> Result<(), StructureError> {
        let n = g.order();
        if self.0.len() != n {
            return Err(StructureError::BadOperator(alloc::format!("{} images for {n} elements", self.0.len())));
        }
        match self.0.iter().find(|&&x| x >= n) {
            Some(bad) => Err(StructureError::BadOperator(alloc::format!("image {bad} is not an element"))),
            None => Ok(()),
        }
    }
}

/// Which of the two equalities of the averaging law failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AveragingLaw {
    /// `A(g)A(h) = A(A(g)h)`
    Left,
    /// `A(g)A(h) = A(gA(h))`
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AveragingFailure {
    pub g: usize,
    pub h: usize,
    pub law: AveragingLaw,
}

impl fmt::Display for AveragingFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let law = match self.law {
            AveragingLaw::Left => "A(g)A(h) = A(A(g)h)",
            AveragingLaw::Right => "A(g)A(h) = A(gA(h))",
        };
        write!(f, "{law} fails at (g, h) = ({}, {})", self.g, self.h)
    }
}

/// Checks the averaging law on all pairs, returning the first failure in
/// lexicographic order.
pub fn validate_averaging(g: &FiniteGroup, a: &OperatorTable) -> Result<(), StructureError> {
    a.check_shape(g)?;
    first_averaging_failure(g, a).map_or(Ok(()), |e| Err(StructureError::NotAveraging(e)))
}

fn first_averaging_failure(g: &FiniteGroup, a: &OperatorTable) -> Option<AveragingFailure> {
    for x in g.elements() {
        for y in g.elements() {
            let lhs = g.mul(a.apply(x), a.apply(y));
            if lhs != a.apply(g.mul(a.apply(x), y)) {
                return Some(AveragingFailure { g: x, h: y, law: AveragingLaw::Left });
            }
            if lhs != a.apply(g.mul(x, a.apply(y))) {
                return Some(AveragingFailure { g: x, h: y, law: AveragingLaw::Right });
            }
        }
    }
    None
}

/// A finite group with a validated averaging operator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAveragingGroup {
    group: FiniteGroup,
    op: OperatorTable,
}

impl FiniteAveragingGroup {
    pub fn new(group: FiniteGroup, op: OperatorTable) -> Result<FiniteAveragingGroup, StructureError> {
        validate_averaging(&group, &op)?;
        Ok(FiniteAveragingGroup { group, op })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn operator(&self) -> &OperatorTable {
        &self.op
    }

    pub fn apply(&self, a: usize) -> usize {
        self.op.apply(a)
    }

    /// `A(e) = e`.
    pub fn is_pointed(&self) -> bool {
        let e = self.group.identity();
        self.op.apply(e) == e
    }
}

impl OperatedGroup for FiniteAveragingGroup {
    type Elem = usize;

    fn identity(&self) -> usize {
        self.group.identity()
    }

    fn mul(&self, a: &usize, b: &usize) -> usize {
        self.group.mul(*a, *b)
    }

    fn inv(&self, a: &usize) -> usize {
        self.group.inv(*a)
    }

    fn op(&self, a: &usize) -> usize {
        self.op.apply(*a)
    }
}

impl AveragingGroup for FiniteAveragingGroup {}

/// `(ℤ, +)` with the central shift `A(a) = a + z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntShift {
    pub z: i64,
}

impl OperatedGroup for IntShift {
    type Elem = i64;

    fn identity(&self) -> i64 {
        0
    }

    fn mul(&self, a: &i64, b: &i64) -> i64 {
        a + b
    }

    fn inv(&self, a: &i64) -> i64 {
        -a
    }

    fn op(&self, a: &i64) -> i64 {
        a + self.z
    }
}

// A(a)+A(b) = a+b+2z = A(A(a)+b) = A(a+A(b))
impl AveragingGroup for IntShift {}

/// Left multiplication by a central element.
pub fn shift_operator(g: &FiniteGroup, z: usize) -> Result<FiniteAveragingGroup, StructureError> {
    if z >= g.order() {
        return Err(StructureError::BadOperator(alloc::format!("{z} is not an element")));
    }
    if !g.is_central(z) {
        return Err(StructureError::NotCentral { z });
    }
    let op = OperatorTable(g.elements().map(|h| g.mul(z, h)).collect());
    FiniteAveragingGroup::new(g.clone(), op)
}

pub fn idempotent_endo_operator(g: &FiniteGroup, phi: &OperatorTable) -> Result<FiniteAveragingGroup, StructureError> {
    phi.check_shape(g)?;
    for a in g.elements() {
        for b in g.elements() {
            if phi.apply(g.mul(a, b)) != g.mul(phi.apply(a), phi.apply(b)) {
                return Err(StructureError::NotHomomorphism { a, b });
            }
        }
    }
    if let Some(a) = g.elements().find(|&a| phi.apply(phi.apply(a)) != phi.apply(a)) {
        return Err(StructureError::NotIdempotent { a });
    }
    FiniteAveragingGroup::new(g.clone(), phi.clone())
}

/// `A₁ ∘ A₂` for commuting averaging operators.
pub fn compose_operators(
    g: &FiniteGroup,
    a1: &OperatorTable,
    a2: &OperatorTable,
) -> Result<FiniteAveragingGroup, StructureError> {
    validate_averaging(g, a1)?;
    validate_averaging(g, a2)?;
    let ab = a1.compose(a2);
    let ba = a2.compose(a1);
    if let Some(a) = g.elements().find(|&a| ab.apply(a) != ba.apply(a)) {
        return Err(StructureError::NonCommuting { a });
    }
    FiniteAveragingGroup::new(g.clone(), ab)
}

/// Outcome of checking the consequences of `A(e) = e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PointedReport {
    NotPointed,
    Checked {
        /// `A(A(g)) = A(g)`; the witness is `g`.
        idempotent: Result<(), usize>,
        /// `A(g)^-1 = A(A(g)^-1)`.
        inverse_preserving: Result<(), usize>,
        /// `A(g)A(h)A(g)^-1 = A(A(g)hA(g)^-1)`.
        ad_equivariant: Result<(), (usize, usize)>,
    },
}

impl PointedReport {
    pub fn all_hold(&self) -> bool {
        matches!(
            self,
            PointedReport::Checked { idempotent: Ok(()), inverse_preserving: Ok(()), ad_equivariant: Ok(()) }
        )
    }
}

pub fn check_pointed_consequences(h: &FiniteAveragingGroup) -> PointedReport {
    if !h.is_pointed() {
        return PointedReport::NotPointed;
    }
    let g = h.group();
    let a = |x: usize| h.apply(x);
    let idempotent = g.elements().find(|&x| a(a(x)) != a(x)).map_or(Ok(()), Err);
    let inverse_preserving = g.elements().find(|&x| g.inv(a(x)) != a(g.inv(a(x)))).map_or(Ok(()), Err);
    let mut ad_equivariant = Ok(());
    'outer: for x in g.elements() {
        let ax = a(x);
        let ax_inv = g.inv(ax);
        for y in g.elements() {
            let lhs = g.mul(g.mul(ax, a(y)), ax_inv);
            let rhs = a(g.mul(g.mul(ax, y), ax_inv));
            if lhs != rhs {
                ad_equivariant = Err((x, y));
                break 'outer;
            }
        }
    }
    PointedReport::Checked { idempotent, inverse_preserving, ad_equivariant }
}

/// `g ⊣ k = g A(k)`.
pub fn left_op(h: &FiniteAveragingGroup, g: usize, k: usize) -> usize {
    h.group().mul(g, h.apply(k))
}

/// `g ⊢ k = A(g) k`.
pub fn right_op(h: &FiniteAveragingGroup, g: usize, k: usize) -> usize {
    h.group().mul(h.apply(g), k)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisemigroupReport {
    /// The five identities in order; a failure carries the triple.
    pub identities: [Result<(), (usize, usize, usize)>; 5],
    /// `g ⊣ e = g = e ⊢ g` for all `g`; a failure carries `g`.
    pub identity_bar_unit: Result<(), usize>,
    /// Every element `u` with `g ⊣ u = g = u ⊢ g` for all `g`.
    pub bar_units: Vec<usize>,
}

impl DisemigroupReport {
    pub fn is_disemigroup(&self) -> bool {
        self.identities.iter().all(Result::is_ok)
    }

    /// Disemigroup with the group identity as bar-unit.
    pub fn is_dimonoid(&self) -> bool {
        self.is_disemigroup() && self.identity_bar_unit.is_ok()
    }
}

pub const DISEMIGROUP_IDENTITIES: [&str; 5] = [
    "(f -| g) -| h = f -| (g -| h)",
    "(f -| g) -| h = f -| (g |- h)",
    "(f |- g) -| h = f |- (g -| h)",
    "(f -| g) |- h = f |- (g |- h)",
    "(f |- g) |- h = f |- (g |- h)",
];

pub fn check_disemigroup(h: &FiniteAveragingGroup) -> DisemigroupReport {
    let l = |x, y| left_op(h, x, y);
    let r = |x, y| right_op(h, x, y);
    let sides: [&dyn Fn(usize, usize, usize) -> (usize, usize); 5] = [
        &|f, g, k| (l(l(f, g), k), l(f, l(g, k))),
        &|f, g, k| (l(l(f, g), k), l(f, r(g, k))),
        &|f, g, k| (l(r(f, g), k), r(f, l(g, k))),
        &|f, g, k| (r(l(f, g), k), r(f, r(g, k))),
        &|f, g, k| (r(r(f, g), k), r(f, r(g, k))),
    ];
    let elems = h.group().elements();
    let identities = sides.map(|side| {
        for f in elems.clone() {
            for g in elems.clone() {
                for k in elems.clone() {
                    let (lhs, rhs) = side(f, g, k);
                    if lhs != rhs {
                        return Err((f, g, k));
                    }
                }
            }
        }
        Ok(())
    });
    let is_bar_unit = |u: usize| elems.clone().all(|g| l(g, u) == g && r(u, g) == g);
    let e = h.group().identity();
    let identity_bar_unit = elems.clone().find(|&g| l(g, e) != g || r(e, g) != g).map_or(Ok(()), Err);
    let bar_units = elems.clone().filter(|&u| is_bar_unit(u)).collect();
    DisemigroupReport { identities, identity_bar_unit, bar_units }
}

/// `g ▷ k = A(g) k A(g)^-1`.
pub fn rack_op(h: &FiniteAveragingGroup, g: usize, k: usize) -> usize {
    let grp = h.group();
    let ag = h.apply(g);
    grp.mul(grp.mul(ag, k), grp.inv(ag))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RackReport {
    /// `f ▷ (g ▷ k) = (f ▷ g) ▷ (f ▷ k)`.
    pub self_distributive: Result<(), (usize, usize, usize)>,
    /// Every `L_g = g ▷ -` is a bijection; the witness is `g`.
    pub bijective: Result<(), usize>,
}

impl RackReport {
    pub fn is_rack(&self) -> bool {
        self.self_distributive.is_ok() && self.bijective.is_ok()
    }
}

/// Rack laws for `▷`; `None` when the operator is not pointed.
pub fn check_rack(h: &FiniteAveragingGroup) -> Option<RackReport> {
    if !h.is_pointed() {
        return None;
    }
    let elems = h.group().elements();
    let t = |x, y| rack_op(h, x, y);
    let mut self_distributive = Ok(());
    'outer: for f in elems.clone() {
        for g in elems.clone() {
            for k in elems.clone() {
                if t(f, t(g, k)) != t(t(f, g), t(f, k)) {
                    self_distributive = Err((f, g, k));
                    break 'outer;
                }
            }
        }
    }
    let n = h.group().order();
    let bijective = elems
        .clone()
        .find(|&g| {
            let mut seen = alloc::vec![false; n];
            elems.clone().for_each(|k| seen[t(g, k)] = true);
            seen.contains(&false)
        })
        .map_or(Ok(()), Err);
    Some(RackReport { self_distributive, bijective })
}

/// All averaging operators on `g`, in lexicographic order of their image
/// lists.
pub fn search_averaging_ops(g: &FiniteGroup, pointed_only: bool) -> Result<Vec<OperatorTable>, StructureError> {
    search_averaging_ops_capped(g, pointed_only, DEFAULT_SEARCH_CAP)
}

pub fn search_averaging_ops_capped(
    g: &FiniteGroup,
    pointed_only: bool,
    cap: usize,
) -> Result<Vec<OperatorTable>, StructureError> {
    let n = g.order();
    if n > cap {
        return Err(StructureError::TooLarge { order: n, cap });
    }
    let e = g.identity();
    let mut found = Vec::new();
    let mut images = alloc::vec![0usize; n];
    loop {
        let op = OperatorTable(images.clone());
        if (!pointed_only || op.apply(e) == e) && first_averaging_failure(g, &op).is_none() {
            found.push(op);
        }
        // odometer with the last position fastest
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(found);
            }
            i -= 1;
            images[i] += 1;
            if images[i] < n {
                break;
            }
            images[i] = 0;
        }
    }
}
