//! Bounded complexes of free abelian groups, graded morphisms between
//! them and the hom complex with `df = f∘d_A - d_B∘ε(f)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::category::CategoryExt;
use crate::chain::{induced_complex_map, AdmissibleComplex, AdmissibleComplexOf, ChainCohomologyOf};
use crate::error::{Error, Result};
use crate::fgab::{AbMorphism, Fgab, FpAbelianGroup};
use crate::matrix::{hnf, IntMatrix};

/// `Z^{r_lo} -> … -> Z^{r_hi}` with `d_i` an `r_{i+1} × r_i` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeComplex {
    lo: i64,
    ranks: Vec<usize>,
    d: Vec<IntMatrix>,
}

impl FreeComplex {
    pub fn new(lo: i64, ranks: Vec<usize>, d: Vec<IntMatrix>) -> Result<Self> {
        let c = Self::unchecked(lo, ranks, d)?;
        if let Some(i) = c.first_nonzero_square() {
            return Err(Error::Hypothesis(format!("d{}∘d{i} is not zero", i + 1)));
        }
        Ok(c)
    }

    fn unchecked(lo: i64, ranks: Vec<usize>, d: Vec<IntMatrix>) -> Result<Self> {
        if d.len() + 1 != ranks.len().max(1) {
            return Err(Error::Invalid(format!("{} ranks but {} differentials", ranks.len(), d.len())));
        }
        for (n, m) in d.iter().enumerate() {
            if (m.rows(), m.cols()) != (ranks[n + 1], ranks[n]) {
                return Err(Error::Invalid(format!(
                    "d{} is {}x{}, expected {}x{}",
                    lo + n as i64,
                    m.rows(),
                    m.cols(),
                    ranks[n + 1],
                    ranks[n]
                )));
            }
        }
        Ok(FreeComplex { lo, ranks, d })
    }

    fn first_nonzero_square(&self) -> Option<i64> {
        self.d
            .windows(2)
            .position(|w| !w[1].mul(&w[0]).is_zero())
            .map(|n| self.lo + n as i64)
    }

    pub fn zero() -> Self {
        FreeComplex { lo: 0, ranks: Vec::new(), d: Vec::new() }
    }

    /// `Z^rank` in a single degree.
    pub fn concentrated(degree: i64, rank: usize) -> Self {
        FreeComplex { lo: degree, ranks: vec![rank], d: Vec::new() }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.ranks.len() as i64 - 1
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, i: i64) -> usize {
        match usize::try_from(i - self.lo) {
            Ok(k) if k < self.ranks.len() => self.ranks[k],
            _ => 0,
        }
    }

    /// `d_i`, zero outside the window.
    pub fn differential(&self, i: i64) -> IntMatrix {
        match usize::try_from(i - self.lo) {
            Ok(k) if k < self.d.len() => self.d[k].clone(),
            _ => IntMatrix::zeros(self.rank(i + 1), self.rank(i)),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.iter().all(|&r| r == 0)
    }

    /// The complex over `lo..=hi` (which must contain the window) as an
    /// admissible complex of the abelian group instance.
    pub fn to_admissible(&self, lo: i64, hi: i64) -> Result<AdmissibleComplexOf<Fgab>> {
        if !self.ranks.is_empty() && (lo > self.lo || hi < self.hi()) {
            return Err(Error::Invalid("window does not contain the complex".into()));
        }
        let objects: Vec<FpAbelianGroup> = (lo..=hi).map(|i| FpAbelianGroup::free(self.rank(i))).collect();
        let mut diffs = Vec::new();
        for i in lo..hi {
            let k = (i - lo) as usize;
            diffs.push(AbMorphism::new(objects[k].clone(), objects[k + 1].clone(), self.differential(i))?);
        }
        AdmissibleComplex::with_objects(&Fgab, lo, objects, &diffs)
    }

    pub fn admissible(&self) -> Result<AdmissibleComplexOf<Fgab>> {
        self.to_admissible(self.lo, self.hi())
    }

    /// `H^i`, through the generic cohomology construction.
    pub fn cohomology(&self, i: i64) -> Result<FpAbelianGroup> {
        Ok(self.admissible()?.cohomology(&Fgab, i)?.object().clone())
    }

    /// `Σ (-1)^i rank A_i`.
    pub fn euler_characteristic(&self) -> i64 {
        (self.lo..=self.hi()).map(|i| sign(i) * self.rank(i) as i64).sum()
    }
}

fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `f_i: A_i -> B_{i+k}` for a fixed degree `k`; absent components are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMorphism {
    pub degree: i64,
    pub components: BTreeMap<i64, IntMatrix>,
}

impl GradedMorphism {
    pub fn zero(degree: i64) -> Self {
        GradedMorphism { degree, components: BTreeMap::new() }
    }

    pub fn with(mut self, i: i64, m: IntMatrix) -> Self {
        self.components.insert(i, m);
        self
    }

    pub fn identity(a: &FreeComplex) -> Self {
        let mut f = GradedMorphism::zero(0);
        for i in a.lo()..=a.hi() {
            f.components.insert(i, IntMatrix::identity(a.rank(i)));
        }
        f
    }

    /// Component at `i` as a matrix of the right shape.
    pub fn component(&self, a: &FreeComplex, b: &FreeComplex, i: i64) -> IntMatrix {
        let shape = (b.rank(i + self.degree), a.rank(i));
        match self.components.get(&i) {
            Some(m) if (m.rows(), m.cols()) == shape => m.clone(),
            _ => IntMatrix::zeros(shape.0, shape.1),
        }
    }

    /// Drops components that are zero or fall outside `a -> b`.
    pub fn normalized(&self, a: &FreeComplex, b: &FreeComplex) -> Self {
        let mut f = GradedMorphism::zero(self.degree);
        for i in a.lo()..=a.hi() {
            let m = self.component(a, b, i);
            if !m.is_zero() {
                f.components.insert(i, m);
            }
        }
        f
    }

    /// Addition is only defined between morphisms of the same degree.
    pub fn add(&self, other: &GradedMorphism, a: &FreeComplex, b: &FreeComplex) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::Invalid(format!("cannot add degrees {} and {}", self.degree, other.degree)));
        }
        let mut f = GradedMorphism::zero(self.degree);
        for i in a.lo()..=a.hi() {
            f.components.insert(i, self.component(a, b, i).add(&other.component(a, b, i)));
        }
        Ok(f.normalized(a, b))
    }

    pub fn neg(&self) -> Self {
        GradedMorphism {
            degree: self.degree,
            components: self.components.iter().map(|(&i, m)| (i, m.neg())).collect(),
        }
    }

    /// `ε(f) = (-1)^deg(f) f`.
    pub fn epsilon(&self) -> Self {
        if sign(self.degree) == 1 {
            self.clone()
        } else {
            self.neg()
        }
    }

    /// `g∘f` for `f: A -> B`, `g: B -> C`.
    pub fn compose(g: &GradedMorphism, f: &GradedMorphism, a: &FreeComplex, b: &FreeComplex, c: &FreeComplex) -> Self {
        let mut h = GradedMorphism::zero(f.degree + g.degree);
        for i in a.lo()..=a.hi() {
            let m = g.component(b, c, i + f.degree).mul(&f.component(a, b, i));
            if !m.is_zero() {
                h.components.insert(i, m);
            }
        }
        h
    }

    /// The differential of a complex as a degree one morphism.
    pub fn differential_of(a: &FreeComplex) -> Self {
        let mut d = GradedMorphism::zero(1);
        for i in a.lo()..a.hi() {
            d.components.insert(i, a.differential(i));
        }
        d
    }

    pub fn is_zero(&self) -> bool {
        self.components.values().all(IntMatrix::is_zero)
    }
}

/// `Hom(A, B)` as a complex of free groups: degree `k` is
/// `⊕_i Hom(A_i, B_{i+k})`, entries of each block in row-major order.
#[derive(Clone, Debug)]
pub struct HomComplex {
    pub source: FreeComplex,
    pub target: FreeComplex,
    pub complex: FreeComplex,
    /// For each degree, the blocks `(i, offset)` in encoding order.
    blocks: Vec<Vec<(i64, usize)>>,
}

pub fn hom_complex(a: &FreeComplex, b: &FreeComplex) -> Result<HomComplex> {
    HomComplex::new(a, b)
}

impl HomComplex {
    pub fn new(a: &FreeComplex, b: &FreeComplex) -> Result<Self> {
        if a.ranks.is_empty() || b.ranks.is_empty() {
            return Ok(HomComplex {
                source: a.clone(),
                target: b.clone(),
                complex: FreeComplex::zero(),
                blocks: Vec::new(),
            });
        }
        let (kmin, kmax) = (b.lo() - a.hi(), b.hi() - a.lo());
        let mut blocks = Vec::new();
        let mut ranks = Vec::new();
        for k in kmin..=kmax {
            let mut offset = 0;
            let mut bl = Vec::new();
            for i in a.lo()..=a.hi() {
                if (b.lo()..=b.hi()).contains(&(i + k)) {
                    bl.push((i, offset));
                    offset += a.rank(i) * b.rank(i + k);
                }
            }
            blocks.push(bl);
            ranks.push(offset);
        }
        let mut hc = HomComplex {
            source: a.clone(),
            target: b.clone(),
            complex: FreeComplex { lo: kmin, ranks: ranks.clone(), d: Vec::new() },
            blocks,
        };
        let mut d = Vec::new();
        for k in kmin..kmax {
            let n = ranks[(k - kmin) as usize];
            let columns: Vec<Vec<BigInt>> = (0..n)
                .map(|j| {
                    let mut e = vec![BigInt::zero(); n];
                    e[j] = BigInt::one();
                    hc.encode(&hc.apply_d(&hc.decode(k, &e)))
                })
                .collect();
            d.push(IntMatrix::from_columns(ranks[(k - kmin) as usize + 1], &columns));
        }
        hc.complex = FreeComplex::unchecked(kmin, ranks, d)?;
        Ok(hc)
    }

    fn block_index(&self, k: i64) -> Option<&Vec<(i64, usize)>> {
        usize::try_from(k - self.complex.lo()).ok().and_then(|n| self.blocks.get(n))
    }

    /// Coordinates of a graded morphism in `Hom(A, B)_deg`.
    pub fn encode(&self, f: &GradedMorphism) -> Vec<BigInt> {
        let (a, b) = (&self.source, &self.target);
        let mut v = vec![BigInt::zero(); self.complex.rank(f.degree)];
        if let Some(blocks) = self.block_index(f.degree) {
            for &(i, offset) in blocks {
                for (n, x) in f.component(a, b, i).data().iter().enumerate() {
                    v[offset + n] = x.clone();
                }
            }
        }
        v
    }

    pub fn decode(&self, k: i64, v: &[BigInt]) -> GradedMorphism {
        let (a, b) = (&self.source, &self.target);
        let mut f = GradedMorphism::zero(k);
        if let Some(blocks) = self.block_index(k) {
            for &(i, offset) in blocks {
                let (rows, cols) = (b.rank(i + k), a.rank(i));
                f.components.insert(i, IntMatrix::from_vec(rows, cols, v[offset..offset + rows * cols].to_vec()));
            }
        }
        f
    }

    /// `df = f∘d_A - d_B∘ε(f)`.
    pub fn apply_d(&self, f: &GradedMorphism) -> GradedMorphism {
        let (a, b) = (&self.source, &self.target);
        let da = GradedMorphism::differential_of(a);
        let db = GradedMorphism::differential_of(b);
        let first = GradedMorphism::compose(f, &da, a, a, b);
        let second = GradedMorphism::compose(&db, &f.epsilon(), a, b, b);
        first.add(&second.neg(), a, b).expect("both terms have degree deg(f) + 1")
    }

    /// `d∘d` on every generator of every degree.
    pub fn d_squared_is_zero(&self) -> bool {
        let c = &self.complex;
        (c.lo()..=c.hi()).all(|k| {
            let n = c.rank(k);
            (0..n).all(|j| {
                let mut e = vec![BigInt::zero(); n];
                e[j] = BigInt::one();
                self.apply_d(&self.apply_d(&self.decode(k, &e))).is_zero()
            })
        }) && self.complex.first_nonzero_square().is_none()
    }

    pub fn is_cycle(&self, f: &GradedMorphism) -> bool {
        self.apply_d(f).is_zero()
    }

    /// `H^k(Hom(A, B))`.
    pub fn cohomology(&self, k: i64) -> Result<FpAbelianGroup> {
        if self.complex.ranks.is_empty() {
            return Ok(FpAbelianGroup::zero());
        }
        self.complex.cohomology(k)
    }

    /// Whether `f - g` is a boundary, for cycles `f`, `g` of the same degree.
    pub fn homotopy_equal(&self, f: &GradedMorphism, g: &GradedMorphism) -> Result<bool> {
        for (name, x) in [("f", f), ("g", g)] {
            if !self.is_cycle(x) {
                return Err(Error::Hypothesis(format!("{name} is not a cycle")));
            }
        }
        let diff = f.add(&g.neg(), &self.source, &self.target)?;
        let k = diff.degree;
        let d = self.complex.differential(k - 1);
        Ok(hnf(&d).solve(&self.encode(&diff)).is_some())
    }

    /// `g ↦ f∘g`, `Hom(X, A) -> Hom(X, B)`, for a degree zero `f: A -> B`,
    /// with `self = Hom(X, A)` and `other = Hom(X, B)`.
    pub fn post_compose(&self, other: &HomComplex, f: &GradedMorphism) -> GradedMorphism {
        let c = &self.complex;
        let mut out = GradedMorphism::zero(0);
        for k in c.lo()..=c.hi() {
            let n = c.rank(k);
            let columns: Vec<Vec<BigInt>> = (0..n)
                .map(|j| {
                    let mut e = vec![BigInt::zero(); n];
                    e[j] = BigInt::one();
                    let g = self.decode(k, &e);
                    other.encode(&GradedMorphism::compose(f, &g, &self.source, &self.target, &other.target))
                })
                .collect();
            out.components.insert(k, IntMatrix::from_columns(other.complex.rank(k), &columns));
        }
        out
    }
}

/// Maps induced on cohomology by a degree zero chain map.
#[derive(Clone, Debug)]
pub struct InducedCohomology {
    pub lo: i64,
    pub source: Vec<ChainCohomologyOf<Fgab>>,
    pub target: Vec<ChainCohomologyOf<Fgab>>,
    pub maps: Vec<AbMorphism>,
}

impl InducedCohomology {
    pub fn all_isomorphisms(&self) -> bool {
        self.maps.iter().all(|m| Fgab.is_iso(m))
    }
}

/// `H(f): H(A) -> H(B)` degree by degree over the union of the windows.
pub fn induced_map(a: &FreeComplex, b: &FreeComplex, f: &GradedMorphism) -> Result<InducedCohomology> {
    if f.degree != 0 {
        return Err(Error::Hypothesis(format!("chain maps have degree 0, not {}", f.degree)));
    }
    let hom = HomComplex::new(a, b)?;
    if !hom.is_cycle(f) {
        return Err(Error::Hypothesis("f does not commute with the differentials".into()));
    }
    let (lo, hi) = union_window(a, b);
    let mut induced = InducedCohomology { lo, source: Vec::new(), target: Vec::new(), maps: Vec::new() };
    if lo > hi {
        return Ok(induced);
    }
    let ac = a.to_admissible(lo, hi)?;
    let bc = b.to_admissible(lo, hi)?;
    let comps: Vec<AbMorphism> = (lo..=hi)
        .map(|i| {
            let k = (i - lo) as usize;
            AbMorphism::new(ac.objects[k].clone(), bc.objects[k].clone(), f.component(a, b, i))
        })
        .collect::<Result<_>>()?;
    for i in lo..=hi {
        let ha = ac.cohomology(&Fgab, i)?;
        let hb = bc.cohomology(&Fgab, i)?;
        induced.maps.push(induced_complex_map(&Fgab, &ac, &ha, &hb, &comps, i)?);
        induced.source.push(ha);
        induced.target.push(hb);
    }
    Ok(induced)
}

fn union_window(a: &FreeComplex, b: &FreeComplex) -> (i64, i64) {
    match (a.ranks.is_empty(), b.ranks.is_empty()) {
        (true, true) => (0, -1),
        (true, false) => (b.lo(), b.hi()),
        (false, true) => (a.lo(), a.hi()),
        (false, false) => (a.lo().min(b.lo()), a.hi().max(b.hi())),
    }
}

pub fn is_quasi_isomorphism(a: &FreeComplex, b: &FreeComplex, f: &GradedMorphism) -> Result<bool> {
    Ok(induced_map(a, b, f)?.all_isomorphisms())
}

/// Outcome of checking `H(Hom(X, A)) -> H(Hom(X, B))` on finitely many
/// test complexes `X`. It is evidence over the sample only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampledVerdict {
    pub samples: usize,
    /// Indices of test complexes on which the induced map is not an
    /// isomorphism.
    pub failures: Vec<usize>,
}

impl SampledVerdict {
    pub fn holds_on_sample(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn is_weakly_quasi_isomorphism(
    a: &FreeComplex,
    b: &FreeComplex,
    f: &GradedMorphism,
    tests: &[FreeComplex],
) -> Result<SampledVerdict> {
    if tests.is_empty() {
        return Err(Error::Invalid("no test complexes".into()));
    }
    if !HomComplex::new(a, b)?.is_cycle(f) || f.degree != 0 {
        return Err(Error::Hypothesis("f is not a degree 0 cycle".into()));
    }
    let mut failures = Vec::new();
    for (n, x) in tests.iter().enumerate() {
        let xa = HomComplex::new(x, a)?;
        let xb = HomComplex::new(x, b)?;
        let post = xa.post_compose(&xb, f);
        if !is_quasi_isomorphism(&xa.complex, &xb.complex, &post)? {
            failures.push(n);
        }
    }
    Ok(SampledVerdict { samples: tests.len(), failures })
}
