//! Exact linear algebra over ℚ: group algebras `k[G]` with their Hopf
//! structure, and finite-dimensional Lie algebras with a linear operator.
//!
//! All identities checked here are bilinear, so checking basis elements is
//! complete. The random combinations checked in addition guard the linear
//! extension code itself.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_rational::Ratio;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::structures::{validate_averaging, FiniteGroup, OperatorTable};

pub type Rational = Ratio<i128>;

/// Random non-basis pairs checked after the basis pairs.
pub const SPOT_CHECKS: usize = 100;

/// A finitely supported combination of group elements. Zero coefficients are
/// never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GroupAlgebraElement(BTreeMap<usize, Rational>);

impl GroupAlgebraElement {
    pub fn zero() -> Self {
        GroupAlgebraElement(BTreeMap::new())
    }

    /// `δ_g`.
    pub fn basis(g: usize) -> Self {
        Self::from_terms([(g, Rational::one())])
    }

    pub fn from_terms<I: IntoIterator<Item = (usize, Rational)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (g, c) in terms {
            out.add_term(g, c);
        }
        out
    }

    pub fn add_term(&mut self, g: usize, c: Rational) {
        let entry = self.0.entry(g).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.0.remove(&g);
        }
    }

    pub fn coeff(&self, g: usize) -> Rational {
        self.0.get(&g).copied().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, Rational)> + '_ {
        self.0.iter().map(|(&g, &c)| (g, c))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (g, c) in other.terms() {
            out.add_term(g, c);
        }
        out
    }

    pub fn scale(&self, k: Rational) -> Self {
        Self::from_terms(self.terms().map(|(g, c)| (g, c * k)))
    }

    /// The counit, `ε(δ_g) = 1`.
    pub fn counit(&self) -> Rational {
        self.0.values().copied().fold(Rational::zero(), |a, b| a + b)
    }

    /// The coproduct `Δ(δ_g) = δ_g ⊗ δ_g`.
    pub fn coproduct(&self) -> Tensor {
        Tensor::from_terms(self.terms().map(|(g, c)| ((g, g), c)))
    }

    fn max_index(&self) -> Option<usize> {
        self.0.keys().next_back().copied()
    }
}

impl fmt::Display for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (g, c)) in self.terms().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}*d{g}")?;
        }
        Ok(())
    }
}

/// An element of `k[G] ⊗ k[G]`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Tensor(BTreeMap<(usize, usize), Rational>);

impl Tensor {
    pub fn from_terms<I: IntoIterator<Item = ((usize, usize), Rational)>>(terms: I) -> Self {
        let mut out = BTreeMap::new();
        for (k, c) in terms {
            let entry = out.entry(k).or_insert_with(Rational::zero);
            *entry += c;
            if entry.is_zero() {
                out.remove(&k);
            }
        }
        Tensor(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexOutOfCarrier(pub usize);

impl fmt::Display for IndexOutOfCarrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "index {} is outside the carrier", self.0)
    }
}

impl core::error::Error for IndexOutOfCarrier {}

/// Convolution product in `k[G]`.
pub fn ga_mul(
    a: &GroupAlgebraElement,
    b: &GroupAlgebraElement,
    g: &FiniteGroup,
) -> Result<GroupAlgebraElement, IndexOutOfCarrier> {
    for x in [a, b] {
        if let Some(i) = x.max_index().filter(|&i| i >= g.order()) {
            return Err(IndexOutOfCarrier(i));
        }
    }
    let mut out = GroupAlgebraElement::zero();
    for (x, c) in a.terms() {
        for (y, d) in b.terms() {
            out.add_term(g.mul(x, y), c * d);
        }
    }
    Ok(out)
}

/// A linear operator on `k[G]`, given by the images of the basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMap {
    images: Vec<GroupAlgebraElement>,
}

impl LinearMap {
    pub fn new(images: Vec<GroupAlgebraElement>) -> Self {
        LinearMap { images }
    }

    pub fn apply(&self, x: &GroupAlgebraElement) -> GroupAlgebraElement {
        let mut out = GroupAlgebraElement::zero();
        for (g, c) in x.terms() {
            for (h, d) in self.images[g].terms() {
                out.add_term(h, c * d);
            }
        }
        out
    }

    pub fn image(&self, g: usize) -> &GroupAlgebraElement {
        &self.images[g]
    }

    pub fn dim(&self) -> usize {
        self.images.len()
    }
}

/// The linear extension of a set map, `δ_g ↦ δ_{A(g)}`.
pub fn linear_extend(op: &OperatorTable) -> LinearMap {
    LinearMap::new(op.0.iter().map(|&h| GroupAlgebraElement::basis(h)).collect())
}

/// The antipode `S(δ_g) = δ_{g^-1}`.
pub fn antipode(g: &FiniteGroup) -> LinearMap {
    LinearMap::new(g.elements().map(|x| GroupAlgebraElement::basis(g.inv(x))).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgebraLaw {
    /// `P(a)P(b) = P(P(a)b)`
    Left,
    /// `P(a)P(b) = P(aP(b))`
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraFailure {
    BasisPair {
        g: usize,
        h: usize,
        law: AlgebraLaw,
    },
    /// Found only by a random combination: the linear extension is broken.
    Combination {
        a: GroupAlgebraElement,
        b: GroupAlgebraElement,
        law: AlgebraLaw,
    },
}

impl fmt::Display for AlgebraFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let law = |l: &AlgebraLaw| match l {
            AlgebraLaw::Left => "P(a)P(b) = P(P(a)b)",
            AlgebraLaw::Right => "P(a)P(b) = P(aP(b))",
        };
        match self {
            AlgebraFailure::BasisPair { g, h, law: l } => write!(f, "{} fails at basis pair (d{g}, d{h})", law(l)),
            AlgebraFailure::Combination { a, b, law: l } => write!(f, "{} fails at ({a}, {b})", law(l)),
        }
    }
}

fn averaging_failure(
    g: &FiniteGroup,
    p: &LinearMap,
    a: &GroupAlgebraElement,
    b: &GroupAlgebraElement,
) -> Option<AlgebraLaw> {
    let mul = |x: &GroupAlgebraElement, y: &GroupAlgebraElement| ga_mul(x, y, g).expect("supports lie in the carrier");
    let (pa, pb) = (p.apply(a), p.apply(b));
    let lhs = mul(&pa, &pb);
    if lhs != p.apply(&mul(&pa, b)) {
        return Some(AlgebraLaw::Left);
    }
    if lhs != p.apply(&mul(a, &pb)) {
        return Some(AlgebraLaw::Right);
    }
    None
}

fn random_element(rng: &mut ChaCha8Rng, n: usize) -> GroupAlgebraElement {
    let terms = rng.gen_range(2..=n.max(2));
    GroupAlgebraElement::from_terms((0..terms).map(|_| {
        let g = rng.gen_range(0..n);
        let c = Rational::new(rng.gen_range(-4..=4), rng.gen_range(1..=3));
        (g, c)
    }))
}

/// Checks the averaging law for `p` on all basis pairs, then on
/// [`SPOT_CHECKS`] random pairs drawn from `seed`.
pub fn check_averaging_algebra(g: &FiniteGroup, p: &LinearMap, seed: u64) -> Result<(), AlgebraFailure> {
    let basis = GroupAlgebraElement::basis;
    for x in g.elements() {
        for y in g.elements() {
            if let Some(law) = averaging_failure(g, p, &basis(x), &basis(y)) {
                return Err(AlgebraFailure::BasisPair { g: x, h: y, law });
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SPOT_CHECKS {
        let a = random_element(&mut rng, g.order());
        let b = random_element(&mut rng, g.order());
        if let Some(law) = averaging_failure(g, p, &a, &b) {
            return Err(AlgebraFailure::Combination { a, b, law });
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoalgebraFailure {
    /// `Δ(P x) ≠ (P ⊗ P)(Δ x)`.
    Coproduct(GroupAlgebraElement),
    /// `ε(P x) ≠ ε(x)`.
    Counit(GroupAlgebraElement),
}

impl fmt::Display for CoalgebraFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoalgebraFailure::Coproduct(x) => write!(f, "coproduct is not preserved at {x}"),
            CoalgebraFailure::Counit(x) => write!(f, "counit is not preserved at {x}"),
        }
    }
}

fn tensor_square(p: &LinearMap, t: &Tensor) -> Tensor {
    let mut terms = Vec::new();
    for (&(a, b), &c) in &t.0 {
        for (x, d) in p.image(a).terms() {
            for (y, e) in p.image(b).terms() {
                terms.push(((x, y), c * d * e));
            }
        }
    }
    Tensor::from_terms(terms)
}

fn coalgebra_failure(p: &LinearMap, x: &GroupAlgebraElement) -> Option<CoalgebraFailure> {
    let px = p.apply(x);
    if px.coproduct() != tensor_square(p, &x.coproduct()) {
        return Some(CoalgebraFailure::Coproduct(x.clone()));
    }
    if px.counit() != x.counit() {
        return Some(CoalgebraFailure::Counit(x.clone()));
    }
    None
}

/// Checks that `p` preserves the coproduct and the counit, on the basis and
/// on [`SPOT_CHECKS`] random combinations.
pub fn check_coalgebra_map(g: &FiniteGroup, p: &LinearMap, seed: u64) -> Result<(), CoalgebraFailure> {
    for x in g.elements() {
        if let Some(e) = coalgebra_failure(p, &GroupAlgebraElement::basis(x)) {
            return Err(e);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SPOT_CHECKS {
        if let Some(e) = coalgebra_failure(p, &random_element(&mut rng, g.order())) {
            return Err(e);
        }
    }
    Ok(())
}

/// Verdicts on a set map at the group level and for its linear extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HopfVerdict {
    pub group: bool,
    pub algebra: bool,
}

impl fmt::Display for HopfVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = |b: bool| if b { "ok" } else { "fail" };
        write!(f, "(group: {}, algebra: {})", v(self.group), v(self.algebra))
    }
}

/// The two verdicts disagree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HopfDisagreement(pub HopfVerdict);

impl fmt::Display for HopfDisagreement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "group-level and algebra-level verdicts disagree: {}", self.0)
    }
}

impl core::error::Error for HopfDisagreement {}

/// `A` is an averaging operator on `G` exactly when its linear extension is
/// an averaging coalgebra map on `k[G]`; computes both sides.
pub fn check_hopf_equivalence(g: &FiniteGroup, op: &OperatorTable, seed: u64) -> Result<HopfVerdict, HopfDisagreement> {
    let group = validate_averaging(g, op).is_ok();
    let p = linear_extend(op);
    let algebra = check_averaging_algebra(g, &p, seed).is_ok() && check_coalgebra_map(g, &p, seed).is_ok();
    let verdict = HopfVerdict { group, algebra };
    if group == algebra {
        Ok(verdict)
    } else {
        Err(HopfDisagreement(verdict))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AntipodeVerdict {
    /// Some `g` has `g ≠ g^-1`, so `S² ≠ S`.
    HypothesisFails {
        witness: usize,
    },
    Verified,
    Refuted(AlgebraFailure),
}

/// Tests that the antipode is an averaging operator when `S² = S`.
pub fn check_antipode_averaging(g: &FiniteGroup, seed: u64) -> AntipodeVerdict {
    if let Some(witness) = g.elements().find(|&x| g.inv(x) != x) {
        return AntipodeVerdict::HypothesisFails { witness };
    }
    match check_averaging_algebra(g, &antipode(g), seed) {
        Ok(()) => AntipodeVerdict::Verified,
        Err(e) => AntipodeVerdict::Refuted(e),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LieError {
    Shape(&'static str),
    /// `[e_i, e_j] ≠ -[e_j, e_i]` (0-based).
    Antisymmetry {
        i: usize,
        j: usize,
    },
    Jacobi {
        i: usize,
        j: usize,
        k: usize,
    },
}

impl fmt::Display for LieError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieError::Shape(m) => write!(f, "malformed structure constants: {m}"),
            LieError::Antisymmetry { i, j } => write!(f, "antisymmetry fails for (e{}, e{})", i + 1, j + 1),
            LieError::Jacobi { i, j, k } => write!(f, "Jacobi identity fails for (e{}, e{}, e{})", i + 1, j + 1, k + 1),
        }
    }
}

impl core::error::Error for LieError {}

/// A Lie algebra given by structure constants `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    c: Vec<Rational>,
}

pub type Vector = Vec<Rational>;

impl LieAlgebra {
    pub fn new(constants: Vec<Vec<Vec<Rational>>>) -> Result<LieAlgebra, LieError> {
        let dim = constants.len();
        let mut c = Vec::with_capacity(dim * dim * dim);
        for row in &constants {
            if row.len() != dim {
                return Err(LieError::Shape("each row needs one entry per basis element"));
            }
            for v in row {
                if v.len() != dim {
                    return Err(LieError::Shape("each bracket needs one coefficient per basis element"));
                }
                c.extend_from_slice(v);
            }
        }
        let l = LieAlgebra { dim, c };
        l.validate()?;
        Ok(l)
    }

    pub fn abelian(dim: usize) -> LieAlgebra {
        LieAlgebra { dim, c: alloc::vec![Rational::zero(); dim * dim * dim] }
    }

    /// The 2-dimensional non-abelian algebra `[e1, e2] = e2`.
    pub fn solvable2() -> LieAlgebra {
        let (z, o) = (Rational::zero(), Rational::one());
        LieAlgebra::new(alloc::vec![
            alloc::vec![alloc::vec![z, z], alloc::vec![z, o]],
            alloc::vec![alloc::vec![z, -o], alloc::vec![z, z]],
        ])
        .expect("valid structure constants")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self, i: usize) -> Vector {
        let mut v = alloc::vec![Rational::zero(); self.dim];
        v[i] = Rational::one();
        v
    }

    fn constant(&self, i: usize, j: usize, k: usize) -> Rational {
        self.c[(i * self.dim + j) * self.dim + k]
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vector {
        let d = self.dim;
        let mut out = alloc::vec![Rational::zero(); d];
        for i in (0..d).filter(|&i| !x[i].is_zero()) {
            for j in (0..d).filter(|&j| !y[j].is_zero()) {
                for (k, o) in out.iter_mut().enumerate() {
                    *o += x[i] * y[j] * self.constant(i, j, k);
                }
            }
        }
        out
    }

    fn validate(&self) -> Result<(), LieError> {
        let d = self.dim;
        for i in 0..d {
            for j in 0..d {
                if (0..d).any(|k| self.constant(i, j, k) != -self.constant(j, i, k)) {
                    return Err(LieError::Antisymmetry { i, j });
                }
            }
        }
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let (x, y, z) = (self.basis(i), self.basis(j), self.basis(k));
                    let a = self.bracket(&x, &self.bracket(&y, &z));
                    let b = self.bracket(&y, &self.bracket(&z, &x));
                    let c = self.bracket(&z, &self.bracket(&x, &y));
                    if (0..d).any(|n| !(a[n] + b[n] + c[n]).is_zero()) {
                        return Err(LieError::Jacobi { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }
}

/// A square matrix acting on column vectors: `A(e_j) = Σ_i m[i][j] e_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    dim: usize,
    m: Vec<Rational>,
}

impl Matrix {
    /// Row-major entries; `None` if the rows are not square.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Option<Matrix> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return None;
        }
        Some(Matrix { dim, m: rows.into_iter().flatten().collect() })
    }

    pub fn zero(dim: usize) -> Matrix {
        Matrix { dim, m: alloc::vec![Rational::zero(); dim * dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> Rational {
        self.m[i * self.dim + j]
    }

    pub fn apply(&self, v: &[Rational]) -> Vector {
        (0..self.dim).map(|i| (0..self.dim).fold(Rational::zero(), |acc, j| acc + self.entry(i, j) * v[j])).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LieLaw {
    /// `[A a, A b] = A[A a, b]`
    Left,
    /// `[A a, A b] = A[a, A b]`
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LieFailure {
    DimensionMismatch {
        algebra: usize,
        operator: usize,
    },
    /// Basis indices are 0-based.
    BasisPair {
        i: usize,
        j: usize,
        law: LieLaw,
    },
}

impl fmt::Display for LieFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieFailure::DimensionMismatch { algebra, operator } => {
                write!(f, "operator of size {operator} on an algebra of dimension {algebra}")
            }
            LieFailure::BasisPair { i, j, law } => {
                let law = match law {
                    LieLaw::Left => "[A(a),A(b)] = A([A(a),b])",
                    LieLaw::Right => "[A(a),A(b)] = A([a,A(b)])",
                };
                write!(f, "{law} fails at basis pair (e{}, e{})", i + 1, j + 1)
            }
        }
    }
}

impl core::error::Error for LieFailure {}

/// Checks the averaging law for `a` on all basis pairs.
pub fn check_averaging_lie(l: &LieAlgebra, a: &Matrix) -> Result<(), LieFailure> {
    if l.dim() != a.dim() {
        return Err(LieFailure::DimensionMismatch { algebra: l.dim(), operator: a.dim() });
    }
    for i in 0..l.dim() {
        for j in 0..l.dim() {
            let (ai, aj) = (a.apply(&l.basis(i)), a.apply(&l.basis(j)));
            let lhs = l.bracket(&ai, &aj);
            if lhs != a.apply(&l.bracket(&ai, &l.basis(j))) {
                return Err(LieFailure::BasisPair { i, j, law: LieLaw::Left });
            }
            if lhs != a.apply(&l.bracket(&l.basis(i), &aj)) {
                return Err(LieFailure::BasisPair { i, j, law: LieLaw::Right });
            }
        }
    }
    Ok(())
}

/// `{x, y} = [A x, y]`.
pub fn leibniz_bracket(l: &LieAlgebra, a: &Matrix, x: &[Rational], y: &[Rational]) -> Vector {
    l.bracket(&a.apply(x), y)
}

/// Checks `{x,{y,z}} = {{x,y},z} + {y,{x,z}}` on all basis triples; the
/// failure carries the 0-based triple.
pub fn check_leibniz(l: &LieAlgebra, a: &Matrix) -> Result<(), (usize, usize, usize)> {
    let b = |x: &[Rational], y: &[Rational]| leibniz_bracket(l, a, x, y);
    let d = l.dim();
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let (x, y, z) = (l.basis(i), l.basis(j), l.basis(k));
                let lhs = b(&x, &b(&y, &z));
                let r1 = b(&b(&x, &y), &z);
                let r2 = b(&y, &b(&x, &z));
                if (0..d).any(|n| lhs[n] != r1[n] + r2[n]) {
                    return Err((i, j, k));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn r(n: i128) -> Rational {
        Rational::from_integer(n)
    }

    fn d(g: usize) -> GroupAlgebraElement {
        GroupAlgebraElement::basis(g)
    }

    #[test]
    fn convolution() {
        let z3 = FiniteGroup::cyclic(3);
        assert_eq!(ga_mul(&d(1), &d(2), &z3).unwrap(), d(0));
        let x = GroupAlgebraElement::from_terms([(1, r(2)), (2, Rational::new(-1, 3))]);
        assert_eq!(ga_mul(&d(0), &x, &z3).unwrap(), x);
        let s = d(0).add(&d(1));
        assert_eq!(ga_mul(&s, &d(2), &z3).unwrap(), d(2).add(&d(0)));
        assert_eq!(ga_mul(&d(5), &d(0), &z3), Err(IndexOutOfCarrier(5)));
        assert!(d(1).add(&d(1).scale(r(-1))).is_zero());
    }

    #[test]
    fn linear_extension() {
        let p = linear_extend(&OperatorTable(vec![1, 0, 0]));
        assert_eq!(p.apply(&d(0)), d(1));
        let x = d(0).scale(r(2)).add(&d(1).scale(r(3)));
        assert_eq!(p.apply(&x), d(1).scale(r(2)).add(&d(0).scale(r(3))));
        assert!(p.apply(&GroupAlgebraElement::zero()).is_zero());
    }

    #[test]
    fn averaging_algebra() {
        let z2 = FiniteGroup::cyclic(2);
        assert!(check_averaging_algebra(&z2, &linear_extend(&OperatorTable(vec![1, 0])), 1).is_ok());
        let e = check_averaging_algebra(&z2, &linear_extend(&OperatorTable(vec![1, 1])), 1).unwrap_err();
        assert_eq!(e, AlgebraFailure::BasisPair { g: 0, h: 0, law: AlgebraLaw::Left });
        let s3 = FiniteGroup::symmetric3();
        assert!(check_averaging_algebra(&s3, &linear_extend(&OperatorTable::identity(6)), 1).is_ok());
    }

    #[test]
    fn coalgebra_maps() {
        let z3 = FiniteGroup::cyclic(3);
        assert!(check_coalgebra_map(&z3, &linear_extend(&OperatorTable(vec![2, 2, 0])), 3).is_ok());
        let spread = LinearMap::new(vec![d(0).add(&d(1)), d(1), d(2)]);
        assert_eq!(check_coalgebra_map(&z3, &spread, 3), Err(CoalgebraFailure::Coproduct(d(0))));
        let halve = LinearMap::new(vec![d(0).scale(Rational::new(1, 2)), d(1), d(2)]);
        assert!(check_coalgebra_map(&z3, &halve, 3).is_err());
        let kill = LinearMap::new(vec![GroupAlgebraElement::zero(), d(1), d(2)]);
        assert_eq!(check_coalgebra_map(&z3, &kill, 3), Err(CoalgebraFailure::Counit(d(0))));
    }

    #[test]
    fn hopf_equivalence() {
        let z2 = FiniteGroup::cyclic(2);
        let v = check_hopf_equivalence(&z2, &OperatorTable(vec![1, 0]), 0).unwrap();
        assert_eq!(v.to_string(), "(group: ok, algebra: ok)");
        let v = check_hopf_equivalence(&z2, &OperatorTable(vec![1, 1]), 0).unwrap();
        assert_eq!(v, HopfVerdict { group: false, algebra: false });
    }

    #[test]
    fn antipodes() {
        assert_eq!(check_antipode_averaging(&FiniteGroup::cyclic(2), 0), AntipodeVerdict::Verified);
        assert_eq!(check_antipode_averaging(&FiniteGroup::klein(), 0), AntipodeVerdict::Verified);
        assert_eq!(
            check_antipode_averaging(&FiniteGroup::cyclic(3), 0),
            AntipodeVerdict::HypothesisFails { witness: 1 }
        );
    }

    #[test]
    fn lie_checks() {
        let l = LieAlgebra::solvable2();
        let p1 = Matrix::from_rows(vec![vec![r(1), r(0)], vec![r(0), r(0)]]).unwrap();
        let p2 = Matrix::from_rows(vec![vec![r(0), r(0)], vec![r(0), r(1)]]).unwrap();
        assert!(check_averaging_lie(&l, &p1).is_ok());
        assert_eq!(check_averaging_lie(&l, &p2), Err(LieFailure::BasisPair { i: 0, j: 1, law: LieLaw::Right }));
        assert!(check_leibniz(&l, &p1).is_ok());
        assert_eq!(leibniz_bracket(&l, &p1, &l.basis(0), &l.basis(1)), l.basis(1));
        assert_eq!(leibniz_bracket(&l, &p1, &l.basis(1), &l.basis(0)), vec![r(0), r(0)]);
        let ab = LieAlgebra::abelian(3);
        let m = Matrix::from_rows(vec![vec![r(1), r(2), r(3)]; 3]).unwrap();
        assert!(check_averaging_lie(&ab, &m).is_ok());
        assert!(check_leibniz(&ab, &m).is_ok());
    }

    #[test]
    fn lie_validation() {
        let (z, o) = (r(0), r(1));
        let bad = LieAlgebra::new(vec![vec![vec![z, z], vec![z, o]], vec![vec![z, z], vec![z, z]]]);
        assert_eq!(bad.unwrap_err(), LieError::Antisymmetry { i: 0, j: 1 });
        assert!(matches!(LieAlgebra::new(vec![vec![vec![z]]; 2]), Err(LieError::Shape(_))));
    }
}
