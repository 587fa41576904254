//! Finitely presented abelian groups.
//!
//! A group is `Z^n / colspan(R)` for an integer relations matrix `R` with
//! `n` rows. A homomorphism `A -> B` is a `gens(B) × gens(A)` matrix that
//! maps relations of `A` into the relation lattice of `B`. All decisions
//! (equality, surjectivity, solvability of lifts) go through Hermite and
//! Smith normal forms, so nothing here is approximate.
//!
//! Kernels and cokernels are returned in canonical form
//! `Z/d_1 ⊕ … ⊕ Z/d_k ⊕ Z^r` with `1 < d_1 | d_2 | … | d_k`: torsion
//! generators first, relations the diagonal `d_i` columns.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::category::{AdmissibleFactorization, Category, CategoryExt, Cokernel, Kernel, Pullback};
use crate::error::{Error, Result};
use crate::matrix::{hnf, snf, IntMatrix};

/// `Z^gens / colspan(relations)`.
#[derive(Clone)]
pub struct FpAbelianGroup {
    inner: Arc<GroupData>,
}

struct GroupData {
    gens: usize,
    relations: IntMatrix,
    reducer: Reducer,
}

/// Coordinates in which the relation lattice is diagonal: an element `x`
/// is zero iff `(S·x)_i ≡ 0 (mod moduli_i)` for every `i`.
struct Reducer {
    s: IntMatrix,
    s_inv: IntMatrix,
    /// `0` marks a free coordinate, `1` a coordinate that is always zero.
    moduli: Vec<BigInt>,
}

impl Reducer {
    fn new(gens: usize, relations: &IntMatrix) -> Reducer {
        let f = snf(relations);
        let diag = f.diagonal();
        let moduli = (0..gens).map(|i| diag.get(i).cloned().unwrap_or_else(BigInt::zero)).collect();
        Reducer { s: f.s, s_inv: f.s_inv, moduli }
    }

    fn reduce_column(&self, col: &[BigInt]) -> Vec<BigInt> {
        let mut y = self.s.mul_vec(col);
        for (v, m) in y.iter_mut().zip(&self.moduli) {
            if !m.is_zero() {
                *v = v.mod_floor(m);
            }
        }
        y
    }
}

/// Free rank and torsion coefficients `d_1 | d_2 | …` (all `> 1`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl GroupInvariants {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for GroupInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

impl FpAbelianGroup {
    /// `Z^gens / colspan(relations)`; `relations` must have `gens` rows.
    pub fn new(gens: usize, relations: IntMatrix) -> Result<Self> {
        if relations.rows() != gens {
            return Err(Error::Invalid(format!(
                "relations matrix has {} rows, expected {gens}",
                relations.rows()
            )));
        }
        let reducer = Reducer::new(gens, &relations);
        Ok(FpAbelianGroup { inner: Arc::new(GroupData { gens, relations, reducer }) })
    }

    pub fn free(rank: usize) -> Self {
        Self::new(rank, IntMatrix::zeros(rank, 0)).expect("shape is consistent")
    }

    pub fn zero() -> Self {
        Self::free(0)
    }

    /// `Z/n`.
    pub fn cyclic(n: i64) -> Self {
        Self::new(1, IntMatrix::from_i64(1, 1, &[n])).expect("shape is consistent")
    }

    /// The group with the given invariants, in canonical presentation.
    pub fn from_invariants(free_rank: usize, torsion: &[BigInt]) -> Self {
        let t = torsion.len();
        let n = t + free_rank;
        Self::new(n, IntMatrix::diagonal(n, t, torsion)).expect("shape is consistent")
    }

    /// Direct sum with block-diagonal relations.
    pub fn direct_sum(parts: &[&FpAbelianGroup]) -> Self {
        let blocks: Vec<&IntMatrix> = parts.iter().map(|g| g.relations()).collect();
        let gens = parts.iter().map(|g| g.gens()).sum();
        Self::new(gens, IntMatrix::block_diag(&blocks)).expect("shape is consistent")
    }

    pub fn gens(&self) -> usize {
        self.inner.gens
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.inner.relations
    }

    pub fn is_free(&self) -> bool {
        self.inner.relations.is_zero()
    }

    pub fn invariants(&self) -> GroupInvariants {
        let mut free_rank = 0;
        let mut torsion = Vec::new();
        for m in &self.inner.reducer.moduli {
            if m.is_zero() {
                free_rank += 1;
            } else if !m.is_one() {
                torsion.push(m.clone());
            }
        }
        GroupInvariants { free_rank, torsion }
    }

    pub fn is_trivial(&self) -> bool {
        self.invariants().is_trivial()
    }

    /// Is the column vector `x` zero in the group?
    pub fn is_zero_element(&self, x: &[BigInt]) -> bool {
        self.inner.reducer.reduce_column(x).iter().all(Zero::is_zero)
    }

    fn columns_vanish(&self, m: &IntMatrix) -> bool {
        (0..m.cols()).all(|j| self.is_zero_element(&m.column(j)))
    }

    /// Is this already in canonical presentation?
    pub fn is_canonical(&self) -> bool {
        let r = self.relations();
        let t = r.cols();
        if t > self.gens() {
            return false;
        }
        let mut prev = BigInt::one();
        for j in 0..t {
            let d = r.get(j, j);
            if d <= &BigInt::one() || !d.is_multiple_of(&prev) {
                return false;
            }
            prev = d.clone();
            for i in 0..self.gens() {
                if i != j && !r.get(i, j).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Canonical presentation of `Z^gens / colspan(relations)` together with
    /// mutually inverse change-of-generator matrices.
    fn canonicalize(gens: usize, relations: &IntMatrix) -> Canonical {
        let f = snf(relations);
        let diag = f.diagonal();
        let modulus = |i: usize| diag.get(i).cloned().unwrap_or_else(BigInt::zero);
        let kept: Vec<usize> = (0..gens).filter(|&i| !modulus(i).is_one()).collect();
        let torsion: Vec<BigInt> = kept.iter().map(|&i| modulus(i)).filter(|d| !d.is_zero()).collect();
        let free_rank = kept.len() - torsion.len();
        Canonical {
            group: FpAbelianGroup::from_invariants(free_rank, &torsion),
            to_canonical: f.s.select_rows(&kept),
            from_canonical: f.s_inv.select_columns(&kept),
        }
    }

    /// `Hom(self, other)` for free groups: `Z^{m·n}`, entries of the
    /// `n × m` matrix in row-major order.
    pub fn hom_group(&self, other: &FpAbelianGroup) -> Result<HomGroup> {
        if !self.is_free() || !other.is_free() {
            return Err(Error::Precondition("hom_group requires free groups".into()));
        }
        Ok(HomGroup { source_rank: self.gens(), target_rank: other.gens() })
    }
}

struct Canonical {
    group: FpAbelianGroup,
    to_canonical: IntMatrix,
    from_canonical: IntMatrix,
}

impl PartialEq for FpAbelianGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.gens == other.inner.gens && self.inner.relations == other.inner.relations)
    }
}

impl Eq for FpAbelianGroup {}

impl fmt::Debug for FpAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpAbelianGroup({} gens, relations {})", self.gens(), self.relations())
    }
}

impl fmt::Display for FpAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.invariants())
    }
}

/// Encoding of `Hom(Z^m, Z^n) ≅ Z^{mn}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomGroup {
    pub source_rank: usize,
    pub target_rank: usize,
}

impl HomGroup {
    pub fn rank(&self) -> usize {
        self.source_rank * self.target_rank
    }

    pub fn group(&self) -> FpAbelianGroup {
        FpAbelianGroup::free(self.rank())
    }

    pub fn encode(&self, m: &IntMatrix) -> Vec<BigInt> {
        assert_eq!((m.rows(), m.cols()), (self.target_rank, self.source_rank));
        m.data().to_vec()
    }

    pub fn decode(&self, v: &[BigInt]) -> IntMatrix {
        IntMatrix::from_vec(self.target_rank, self.source_rank, v.to_vec())
    }
}

/// A homomorphism of finitely presented abelian groups.
#[derive(Clone, PartialEq)]
pub struct AbMorphism {
    source: FpAbelianGroup,
    target: FpAbelianGroup,
    matrix: IntMatrix,
}

impl AbMorphism {
    /// Validates shape and well-definedness. When the target is canonical
    /// the entries are reduced to their canonical residues.
    pub fn new(source: FpAbelianGroup, target: FpAbelianGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.gens() || matrix.cols() != source.gens() {
            return Err(Error::Invalid(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.gens(),
                source.gens()
            )));
        }
        let image_of_relations = matrix.mul(source.relations());
        if !target.columns_vanish(&image_of_relations) {
            return Err(Error::Invalid("matrix does not respect the source relations".into()));
        }
        let matrix = if target.is_canonical() {
            reduce_rows(&matrix, target.relations())
        } else {
            matrix
        };
        Ok(AbMorphism { source, target, matrix })
    }

    pub fn from_i64(source: &FpAbelianGroup, target: &FpAbelianGroup, data: &[i64]) -> Result<Self> {
        if data.len() != source.gens() * target.gens() {
            return Err(Error::Invalid("matrix data has the wrong length".into()));
        }
        Self::new(
            source.clone(),
            target.clone(),
            IntMatrix::from_i64(target.gens(), source.gens(), data),
        )
    }

    pub fn source(&self) -> &FpAbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &FpAbelianGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn add(&self, other: &AbMorphism) -> Result<AbMorphism> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::NotComposable("sum of morphisms with different ends".into()));
        }
        AbMorphism::new(self.source.clone(), self.target.clone(), self.matrix.add(&other.matrix))
    }

    pub fn neg(&self) -> AbMorphism {
        AbMorphism::new(self.source.clone(), self.target.clone(), self.matrix.neg())
            .expect("negation preserves well-definedness")
    }

    pub fn scale(&self, k: i64) -> AbMorphism {
        AbMorphism::new(self.source.clone(), self.target.clone(), self.matrix.scale(&BigInt::from(k)))
            .expect("scaling preserves well-definedness")
    }
}

impl fmt::Debug for AbMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AbMorphism({} -> {}, {})", self.source, self.target, self.matrix)
    }
}

fn reduce_rows(m: &IntMatrix, diag_relations: &IntMatrix) -> IntMatrix {
    let mut out = m.clone();
    for i in 0..diag_relations.cols() {
        let d = diag_relations.get(i, i);
        for j in 0..m.cols() {
            out.set(i, j, m.get(i, j).mod_floor(d));
        }
    }
    out
}

/// Find `V` (`target.gens × m.rows`) with `V·m ≡ rhs` modulo the relations
/// of `target`. Rows decouple after diagonalizing the relations.
fn left_solve(target: &FpAbelianGroup, m: &IntMatrix, rhs: &IntMatrix) -> Option<IntMatrix> {
    let red = &target.inner.reducer;
    let n = target.gens();
    let s_rhs = red.s.mul(rhs);
    let mt = m.transpose();
    let cols = m.cols();
    let mut w = IntMatrix::zeros(n, m.rows());
    let plain = hnf(&mt);
    for r in 0..n {
        let modulus = &red.moduli[r];
        let h = s_rhs.row(r);
        let sol = if modulus.is_zero() {
            plain.solve(&h)?
        } else if modulus.is_one() {
            continue;
        } else {
            let aug = IntMatrix::hstack(cols, &[&mt, &IntMatrix::identity(cols).scale(modulus)]);
            let x = hnf(&aug).solve(&h)?;
            x[..m.rows()].to_vec()
        };
        for (j, v) in sol.into_iter().take(m.rows()).enumerate() {
            w.set(r, j, v);
        }
    }
    Some(red.s_inv.mul(&w))
}

/// The finitely presented abelian groups instance. Deflations are the
/// surjections.
#[derive(Clone, Copy, Debug, Default)]
pub struct Fgab;

impl Fgab {
    pub fn morphism(&self, source: &FpAbelianGroup, target: &FpAbelianGroup, data: &[i64]) -> Result<AbMorphism> {
        AbMorphism::from_i64(source, target, data)
    }

    pub fn hnf(&self, m: &IntMatrix) -> (IntMatrix, IntMatrix) {
        let r = hnf(m);
        (r.h, r.u)
    }

    pub fn snf(&self, m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
        let r = snf(m);
        (r.d, r.s, r.t)
    }

    /// Canonical presentation of `g` with the isomorphism into it.
    pub fn canonical_form(&self, g: &FpAbelianGroup) -> (FpAbelianGroup, AbMorphism) {
        let c = FpAbelianGroup::canonicalize(g.gens(), g.relations());
        let iso = AbMorphism::new(g.clone(), c.group.clone(), c.to_canonical)
            .expect("canonical change of generators is well defined");
        (c.group, iso)
    }

    /// Inclusion of the `index`-th summand of a direct sum.
    pub fn injection(&self, parts: &[&FpAbelianGroup], index: usize) -> AbMorphism {
        let sum = FpAbelianGroup::direct_sum(parts);
        let offset: usize = parts[..index].iter().map(|g| g.gens()).sum();
        let n = parts[index].gens();
        let mut m = IntMatrix::zeros(sum.gens(), n);
        for i in 0..n {
            m.set(offset + i, i, BigInt::one());
        }
        AbMorphism::new(parts[index].clone(), sum, m).expect("summand inclusion is well defined")
    }

    /// Projection onto the `index`-th summand of a direct sum.
    pub fn projection(&self, parts: &[&FpAbelianGroup], index: usize) -> AbMorphism {
        let sum = FpAbelianGroup::direct_sum(parts);
        let offset: usize = parts[..index].iter().map(|g| g.gens()).sum();
        let n = parts[index].gens();
        let mut m = IntMatrix::zeros(n, sum.gens());
        for i in 0..n {
            m.set(i, offset + i, BigInt::one());
        }
        AbMorphism::new(sum, parts[index].clone(), m).expect("summand projection is well defined")
    }

    /// `f ⊕ g` between direct sums.
    pub fn direct_sum_map(&self, maps: &[&AbMorphism]) -> AbMorphism {
        let sources: Vec<&FpAbelianGroup> = maps.iter().map(|f| f.source()).collect();
        let targets: Vec<&FpAbelianGroup> = maps.iter().map(|f| f.target()).collect();
        let blocks: Vec<&IntMatrix> = maps.iter().map(|f| f.matrix()).collect();
        AbMorphism::new(
            FpAbelianGroup::direct_sum(&sources),
            FpAbelianGroup::direct_sum(&targets),
            IntMatrix::block_diag(&blocks),
        )
        .expect("block diagonal map is well defined")
    }

    /// `(f, g): X -> A ⊕ B`.
    pub fn pairing(&self, maps: &[&AbMorphism]) -> Result<AbMorphism> {
        let source = maps[0].source().clone();
        if maps.iter().any(|f| f.source() != &source) {
            return Err(Error::NotComposable("pairing needs a common source".into()));
        }
        let targets: Vec<&FpAbelianGroup> = maps.iter().map(|f| f.target()).collect();
        let blocks: Vec<&IntMatrix> = maps.iter().map(|f| f.matrix()).collect();
        AbMorphism::new(source.clone(), FpAbelianGroup::direct_sum(&targets), IntMatrix::vstack(source.gens(), &blocks))
    }

    /// `[f g]: A ⊕ B -> Y`.
    pub fn copairing(&self, maps: &[&AbMorphism]) -> Result<AbMorphism> {
        let target = maps[0].target().clone();
        if maps.iter().any(|f| f.target() != &target) {
            return Err(Error::NotComposable("copairing needs a common target".into()));
        }
        let sources: Vec<&FpAbelianGroup> = maps.iter().map(|f| f.source()).collect();
        let blocks: Vec<&IntMatrix> = maps.iter().map(|f| f.matrix()).collect();
        AbMorphism::new(FpAbelianGroup::direct_sum(&sources), target.clone(), IntMatrix::hstack(target.gens(), &blocks))
    }
}

impl Category for Fgab {
    type Object = FpAbelianGroup;
    type Morphism = AbMorphism;

    fn zero_object(&self) -> FpAbelianGroup {
        FpAbelianGroup::zero()
    }

    fn source(&self, f: &AbMorphism) -> FpAbelianGroup {
        f.source.clone()
    }

    fn target(&self, f: &AbMorphism) -> FpAbelianGroup {
        f.target.clone()
    }

    fn identity(&self, a: &FpAbelianGroup) -> AbMorphism {
        AbMorphism::new(a.clone(), a.clone(), IntMatrix::identity(a.gens())).expect("identity is well defined")
    }

    fn compose(&self, g: &AbMorphism, f: &AbMorphism) -> Result<AbMorphism> {
        if f.target != g.source {
            return Err(Error::NotComposable(format!("{:?} then {:?}", f, g)));
        }
        let matrix = g.matrix.mul(&f.matrix);
        let matrix = if g.target.is_canonical() {
            reduce_rows(&matrix, g.target.relations())
        } else {
            matrix
        };
        Ok(AbMorphism { source: f.source.clone(), target: g.target.clone(), matrix })
    }

    fn equal(&self, f: &AbMorphism, g: &AbMorphism) -> bool {
        f.source == g.source && f.target == g.target && f.target.columns_vanish(&f.matrix.sub(&g.matrix))
    }

    fn to_zero(&self, a: &FpAbelianGroup) -> AbMorphism {
        AbMorphism { source: a.clone(), target: FpAbelianGroup::zero(), matrix: IntMatrix::zeros(0, a.gens()) }
    }

    fn from_zero(&self, b: &FpAbelianGroup) -> AbMorphism {
        AbMorphism { source: FpAbelianGroup::zero(), target: b.clone(), matrix: IntMatrix::zeros(b.gens(), 0) }
    }

    fn zero_morphism(&self, a: &FpAbelianGroup, b: &FpAbelianGroup) -> AbMorphism {
        AbMorphism { source: a.clone(), target: b.clone(), matrix: IntMatrix::zeros(b.gens(), a.gens()) }
    }

    /// Surjectivity: the cokernel is trivial.
    fn is_deflation(&self, f: &AbMorphism) -> bool {
        let aug = IntMatrix::hstack(f.target.gens(), &[f.target.relations(), &f.matrix]);
        snf(&aug).diagonal().iter().filter(|d| d.is_one()).count() == f.target.gens()
    }

    fn kernel(&self, f: &AbMorphism) -> Result<Kernel<FpAbelianGroup, AbMorphism>> {
        let a = &f.source;
        if f.target.gens() == 0 {
            return Ok(Kernel { object: a.clone(), inclusion: self.identity(a) });
        }
        // x lies in the kernel lattice iff F·x ∈ colspan(R_B).
        let n = a.gens();
        let aug = IntMatrix::hstack(f.target.gens(), &[&f.matrix, f.target.relations()]);
        let null = hnf(&aug).kernel_basis();
        let generators = null.row_range(0, n);
        let lattice = hnf(&generators).image_basis();
        let basis = hnf(&lattice);
        let mut coords = Vec::with_capacity(a.relations().cols());
        for j in 0..a.relations().cols() {
            let q = basis.solve(&a.relations().column(j)).ok_or_else(|| {
                Error::Invalid("morphism does not respect the source relations".into())
            })?;
            coords.push(q);
        }
        let rank = lattice.cols();
        let q = IntMatrix::from_columns(rank, &coords);
        let canon = FpAbelianGroup::canonicalize(rank, &q);
        let inclusion = AbMorphism::new(canon.group.clone(), a.clone(), lattice.mul(&canon.from_canonical))?;
        Ok(Kernel { object: canon.group, inclusion })
    }

    fn cokernel(&self, f: &AbMorphism) -> Result<Cokernel<FpAbelianGroup, AbMorphism>> {
        let b = &f.target;
        if f.source.gens() == 0 {
            return Ok(Cokernel { object: b.clone(), projection: self.identity(b) });
        }
        let aug = IntMatrix::hstack(b.gens(), &[b.relations(), &f.matrix]);
        let canon = FpAbelianGroup::canonicalize(b.gens(), &aug);
        let projection = AbMorphism::new(b.clone(), canon.group.clone(), canon.to_canonical)?;
        Ok(Cokernel { object: canon.group, projection })
    }

    fn kernel_lift(&self, p: &AbMorphism, k: &AbMorphism, g: &AbMorphism) -> Result<AbMorphism> {
        if k.target != p.source || g.target != p.source {
            return Err(Error::NotComposable("kernel_lift: k and g must land in the source of p".into()));
        }
        let pg = self.compose(p, g)?;
        if !self.is_zero(&pg) {
            return Err(Error::Precondition("kernel_lift: p∘g is not zero".into()));
        }
        let b = &p.source;
        let aug = IntMatrix::hstack(b.gens(), &[&k.matrix, b.relations()]);
        let solver = hnf(&aug);
        let kg = k.source.gens();
        let mut columns = Vec::with_capacity(g.source.gens());
        for j in 0..g.source.gens() {
            let x = solver
                .solve(&g.matrix.column(j))
                .ok_or_else(|| Error::Precondition("kernel_lift: g does not factor through k".into()))?;
            columns.push(x[..kg].to_vec());
        }
        let u = IntMatrix::from_columns(kg, &columns);
        AbMorphism::new(g.source.clone(), k.source.clone(), u)
            .map_err(|_| Error::Precondition("kernel_lift: k is not a monomorphism".into()))
    }

    fn cokernel_colift(&self, i: &AbMorphism, c: &AbMorphism, g: &AbMorphism) -> Result<AbMorphism> {
        if c.source != i.target || g.source != i.target {
            return Err(Error::NotComposable("cokernel_colift: c and g must start at the target of i".into()));
        }
        let gi = self.compose(g, i)?;
        if !self.is_zero(&gi) {
            return Err(Error::Precondition("cokernel_colift: g∘i is not zero".into()));
        }
        let q = &c.target;
        let t = &g.target;
        let lhs = IntMatrix::hstack(q.gens(), &[&c.matrix, q.relations()]);
        let rhs = IntMatrix::hstack(t.gens(), &[&g.matrix, &IntMatrix::zeros(t.gens(), q.relations().cols())]);
        let v = left_solve(t, &lhs, &rhs)
            .ok_or_else(|| Error::Precondition("cokernel_colift: g does not factor through c".into()))?;
        AbMorphism::new(q.clone(), t.clone(), v)
    }

    fn inverse(&self, f: &AbMorphism) -> Option<AbMorphism> {
        let (a, b) = (&f.source, &f.target);
        let lhs = IntMatrix::hstack(b.gens(), &[&f.matrix, b.relations()]);
        let rhs = IntMatrix::hstack(
            a.gens(),
            &[&IntMatrix::identity(a.gens()), &IntMatrix::zeros(a.gens(), b.relations().cols())],
        );
        let v = left_solve(a, &lhs, &rhs)?;
        let g = AbMorphism::new(b.clone(), a.clone(), v).ok()?;
        let fg = self.compose(f, &g).ok()?;
        self.equal(&fg, &self.identity(b)).then_some(g)
    }

    /// Pullback of `p: B -> D` along any `f: A -> D`, as the kernel of
    /// `[p, -f]: B ⊕ A -> D`.
    fn pullback_of_deflation(&self, p: &AbMorphism, f: &AbMorphism) -> Result<Pullback<FpAbelianGroup, AbMorphism>> {
        if !self.is_deflation(p) {
            return Err(Error::Precondition("pullback: p is not a deflation".into()));
        }
        let (diff, b_gens) = self.difference_map(p, f)?;
        let ker = self.kernel(&diff)?;
        let m = ker.inclusion.matrix();
        let lifted = AbMorphism::new(ker.object.clone(), p.source.clone(), m.row_range(0, b_gens))?;
        let pulled_back = AbMorphism::new(ker.object.clone(), f.source.clone(), m.row_range(b_gens, m.rows()))?;
        Ok(Pullback { apex: ker.object, lifted, pulled_back })
    }

    fn pullback_lift(
        &self,
        p: &AbMorphism,
        f: &AbMorphism,
        pb: &Pullback<FpAbelianGroup, AbMorphism>,
        x: &AbMorphism,
        y: &AbMorphism,
    ) -> Result<AbMorphism> {
        let (diff, _) = self.difference_map(p, f)?;
        let inclusion = self.pairing(&[&pb.lifted, &pb.pulled_back])?;
        let g = self.pairing(&[x, y])?;
        self.kernel_lift(&diff, &inclusion, &g)
    }

    /// Image factorization; every homomorphism is admissible.
    fn admissible_factorization(
        &self,
        f: &AbMorphism,
    ) -> Result<Option<AdmissibleFactorization<FpAbelianGroup, AbMorphism>>> {
        let kernel = self.kernel(f)?;
        let coimage = self.cokernel(&kernel.inclusion)?;
        let inflation_part = self.cokernel_colift(&kernel.inclusion, &coimage.projection, f)?;
        let cokernel = self.cokernel(&inflation_part)?;
        Ok(Some(AdmissibleFactorization {
            morphism: f.clone(),
            deflation_part: coimage.projection,
            inflation_part,
            image: coimage.object,
            kernel,
            cokernel,
        }))
    }
}

impl Fgab {
    fn difference_map(&self, p: &AbMorphism, f: &AbMorphism) -> Result<(AbMorphism, usize)> {
        if p.target != f.target {
            return Err(Error::NotComposable("pullback: p and f need a common target".into()));
        }
        let neg = f.neg();
        Ok((self.copairing(&[p, &neg])?, p.source.gens()))
    }

    /// Image factorization, unwrapped (never fails on valid morphisms).
    pub fn factorize(&self, f: &AbMorphism) -> AdmissibleFactorization<FpAbelianGroup, AbMorphism> {
        self.admissible_factorization(f)
            .expect("image factorization of a well-defined morphism")
            .expect("every homomorphism is admissible")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::int;

    fn z() -> FpAbelianGroup {
        FpAbelianGroup::free(1)
    }

    #[test]
    fn zero_morphism_is_zero_matrix() {
        let cat = Fgab;
        let zm = cat.zero_morphism(&z(), &z());
        assert_eq!(zm.matrix(), &IntMatrix::from_i64(1, 1, &[0]));
        let via_zero = cat.compose(&cat.from_zero(&z()), &cat.to_zero(&z())).unwrap();
        assert!(cat.equal(&zm, &via_zero));
    }

    #[test]
    fn kernels_of_basic_maps() {
        let cat = Fgab;
        let times2 = cat.morphism(&z(), &z(), &[2]).unwrap();
        assert!(cat.kernel(&times2).unwrap().object.is_trivial());

        let red = cat.morphism(&z(), &FpAbelianGroup::cyclic(2), &[1]).unwrap();
        let k = cat.kernel(&red).unwrap();
        assert_eq!(k.object.invariants(), GroupInvariants { free_rank: 1, torsion: vec![] });
        assert_eq!(k.inclusion.matrix(), &IntMatrix::from_i64(1, 1, &[2]));

        let z2 = FpAbelianGroup::free(2);
        let f = cat.morphism(&z2, &z2, &[2, 1, 0, 0]).unwrap();
        let k = cat.kernel(&f).unwrap();
        assert_eq!(k.object.invariants().free_rank, 1);
        let col = k.inclusion.matrix().column(0);
        assert!(col == vec![int(1), int(-2)] || col == vec![int(-1), int(2)]);
    }

    #[test]
    fn cokernels_of_basic_maps() {
        let cat = Fgab;
        let times5 = cat.morphism(&z(), &z(), &[5]).unwrap();
        assert_eq!(cat.cokernel(&times5).unwrap().object.to_string(), "Z/5");
        let z2 = FpAbelianGroup::free(2);
        let f = cat.morphism(&z2, &z2, &[2, 1, 0, 0]).unwrap();
        assert_eq!(cat.cokernel(&f).unwrap().object.to_string(), "Z");
        assert!(cat.cokernel(&cat.identity(&z2)).unwrap().object.is_trivial());
    }

    #[test]
    fn deflations_are_surjections() {
        let cat = Fgab;
        assert!(!cat.is_deflation(&cat.morphism(&z(), &z(), &[2]).unwrap()));
        assert!(cat.is_deflation(&cat.morphism(&z(), &FpAbelianGroup::cyclic(2), &[1]).unwrap()));
        assert!(cat.is_deflation(&cat.morphism(&FpAbelianGroup::free(2), &z(), &[1, 0]).unwrap()));
    }

    #[test]
    fn kernel_lift_examples() {
        let cat = Fgab;
        let z2 = FpAbelianGroup::free(2);
        let p = cat.morphism(&z2, &z(), &[0, 1]).unwrap();
        let k = cat.morphism(&z(), &z2, &[1, 0]).unwrap();
        let g = cat.morphism(&z(), &z2, &[3, 0]).unwrap();
        let u = cat.kernel_lift(&p, &k, &g).unwrap();
        assert_eq!(u.matrix(), &IntMatrix::from_i64(1, 1, &[3]));
        let zero = cat.zero_morphism(&z(), &z2);
        assert!(cat.is_zero(&cat.kernel_lift(&p, &k, &zero).unwrap()));
        let bad = cat.morphism(&z(), &z2, &[0, 1]).unwrap();
        assert!(matches!(cat.kernel_lift(&p, &k, &bad), Err(Error::Precondition(_))));
    }

    #[test]
    fn cokernel_colift_examples() {
        let cat = Fgab;
        let z2g = FpAbelianGroup::cyclic(2);
        let z4g = FpAbelianGroup::cyclic(4);
        let i = cat.morphism(&z(), &z(), &[2]).unwrap();
        let c = cat.morphism(&z(), &z2g, &[1]).unwrap();
        let g = cat.morphism(&z(), &z4g, &[2]).unwrap();
        let v = cat.cokernel_colift(&i, &c, &g).unwrap();
        assert_eq!(v.matrix(), &IntMatrix::from_i64(1, 1, &[2]));
        assert!(cat.equal(&cat.compose(&v, &c).unwrap(), &g));
        assert!(cat.equal(&cat.cokernel_colift(&i, &c, &c).unwrap(), &cat.identity(&z2g)));
        let bad = cat.morphism(&z(), &z4g, &[1]).unwrap();
        assert!(matches!(cat.cokernel_colift(&i, &c, &bad), Err(Error::Precondition(_))));
    }

    #[test]
    fn short_exact_examples() {
        let cat = Fgab;
        let i = cat.morphism(&z(), &z(), &[2]).unwrap();
        let p2 = cat.morphism(&z(), &FpAbelianGroup::cyclic(2), &[1]).unwrap();
        assert!(cat.check_short_exact(&i, &p2).unwrap().is_exact());
        let p4 = cat.morphism(&z(), &FpAbelianGroup::cyclic(4), &[1]).unwrap();
        let r = cat.check_short_exact(&i, &p4).unwrap();
        assert!(!r.is_exact());
        assert!(!r.cokernel);
        assert!(r.failures().contains(&"p not cokernel of i"));
        let a = FpAbelianGroup::free(3);
        assert!(cat.check_short_exact(&cat.identity(&a), &cat.to_zero(&a)).unwrap().is_exact());
    }

    #[test]
    fn image_factorization_of_times_six() {
        let cat = Fgab;
        let f = cat.morphism(&z(), &z(), &[6]).unwrap();
        let fac = cat.factorize(&f);
        assert_eq!(fac.deflation_part.matrix(), &IntMatrix::from_i64(1, 1, &[1]));
        assert_eq!(fac.inflation_part.matrix(), &IntMatrix::from_i64(1, 1, &[6]));
        fac.validate(&cat).unwrap();
        let zero = cat.zero_morphism(&z(), &z());
        assert!(cat.factorize(&zero).image.is_trivial());
        let id = cat.factorize(&cat.identity(&z()));
        assert!(cat.equal(&id.deflation_part, &cat.identity(&z())));
        assert!(cat.equal(&id.inflation_part, &cat.identity(&z())));
    }

    #[test]
    fn pullback_examples() {
        let cat = Fgab;
        let z2g = FpAbelianGroup::cyclic(2);
        let p = cat.morphism(&z(), &z2g, &[1]).unwrap();
        let pb = cat.pullback_of_deflation(&p, &p).unwrap();
        assert_eq!(pb.apex.invariants().free_rank, 2);
        assert!(pb.apex.invariants().torsion.is_empty());
        assert!(cat.is_deflation(&pb.pulled_back));
        let lhs = cat.compose(&p, &pb.lifted).unwrap();
        let rhs = cat.compose(&p, &pb.pulled_back).unwrap();
        assert!(cat.equal(&lhs, &rhs));

        let zero = cat.zero_morphism(&z(), &z2g);
        let pb = cat.pullback_of_deflation(&p, &zero).unwrap();
        assert_eq!(pb.apex.invariants().free_rank, 2);

        let id = cat.identity(&z());
        let pb = cat.pullback_of_deflation(&id, &id).unwrap();
        assert!(cat.is_iso(&pb.pulled_back));
    }

    #[test]
    fn hom_group_dimensions() {
        assert_eq!(z().hom_group(&z()).unwrap().rank(), 1);
        assert_eq!(FpAbelianGroup::free(2).hom_group(&FpAbelianGroup::free(3)).unwrap().rank(), 6);
        assert_eq!(FpAbelianGroup::zero().hom_group(&z()).unwrap().rank(), 0);
        assert!(FpAbelianGroup::cyclic(2).hom_group(&z()).is_err());
    }

    #[test]
    fn invariants_display() {
        let g = FpAbelianGroup::new(3, IntMatrix::from_rows(&[vec![2, 0], vec![0, 3], vec![0, 0]])).unwrap();
        assert_eq!(g.to_string(), "Z ⊕ Z/6");
        assert_eq!(FpAbelianGroup::zero().to_string(), "0");
        assert_eq!(FpAbelianGroup::free(2).to_string(), "Z^2");
    }
}
