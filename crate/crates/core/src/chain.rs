//! Cohomology of admissible chains, differential objects and complexes.
//!
//! Every connecting morphism here comes out of the snake engine: the
//! triangle of a short exact sequence of differential objects and the long
//! exact sequence of a pointwise short exact sequence of complexes are both
//! read off an extended snake on the `C -> K` diagram.

use crate::category::{AdmissibleFactorization, Category, CategoryExt, Cokernel, FactorizationOf, Kernel};
use crate::engine::exact::{check_exact_at, check_long_exact_auto, zero_factorization, LongExactVerdict};
use crate::engine::snake::{
    inflation_cancellation, snake, snake_extended_with, ExtendedSnake, InflationCancellation, SnakeDiagram,
    SnakeResult, SnakeResultOf,
};
use crate::error::{Error, Result};

fn step<T>(name: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| e.at_step(name))
}

fn as_conclusion(what: &str, e: Error) -> Error {
    match e {
        Error::Hypothesis(m) => Error::Conclusion(format!("{what}: {m}")),
        other => other,
    }
}

fn factorize<C: Category>(cat: &C, f: &C::Morphism, what: &str) -> Result<FactorizationOf<C>> {
    cat.admissible_factorization(f)?
        .ok_or_else(|| Error::Hypothesis(format!("{what} is not admissible")))
}

/// Both cohomologies of `A -f-> B -g-> C` with `f` an inflation and `g` a
/// deflation, and the comparison between them.
#[derive(Clone, Debug)]
pub struct ChainCohomology<O, M> {
    /// `g': B -> C'`, a cokernel of `f`.
    pub cokernel_of_f: Cokernel<O, M>,
    /// `r: C' -> C` with `r∘g' = g`.
    pub r: M,
    /// `H -> C'`, a kernel of `r`.
    pub h: Kernel<O, M>,
    /// `f': A' -> B`, a kernel of `g`.
    pub kernel_of_g: Kernel<O, M>,
    /// `s: A -> A'` with `f'∘s = f`.
    pub s: M,
    /// Witnesses that `s` is an inflation.
    pub cancellation: InflationCancellation<O, M>,
    /// `A' -> H'`, a cokernel of `s`.
    pub h_prime: Cokernel<O, M>,
    /// The connecting morphism `H -> H'` of the comparison snake.
    pub iso: M,
    pub iso_inverse: Option<M>,
    pub iso_is_deflation: bool,
    pub iso_is_inflation: bool,
    pub snake: SnakeResult<O, M>,
}

pub type ChainCohomologyOf<C> = ChainCohomology<<C as Category>::Object, <C as Category>::Morphism>;

impl<O, M> ChainCohomology<O, M> {
    pub fn is_verified(&self) -> bool {
        self.iso_is_deflation && self.iso_is_inflation && self.iso_inverse.is_some() && self.snake.exactness.is_exact()
    }

    pub fn object(&self) -> &O {
        &self.h.object
    }
}

/// [`cohomology_two_ways_with`] with the cokernel of `f` and the kernel of
/// `g` taken from the instance.
pub fn cohomology_two_ways<C: Category>(cat: &C, f: &C::Morphism, g: &C::Morphism) -> Result<ChainCohomologyOf<C>> {
    let f_cokernel = cat
        .cokernel(f)
        .map_err(|e| Error::Hypothesis(format!("f has no cokernel: {e}")))?;
    if !cat.is_deflation(g) {
        return Err(Error::Hypothesis("g is not a deflation".into()));
    }
    let g_kernel = step("ker(g)", cat.kernel(g))?;
    cohomology_two_ways_with(cat, f, f_cokernel, g, g_kernel)
}

/// Cohomology of an admissible chain computed as the kernel of `C' -> C`
/// and as the cokernel of `A -> A'`, compared through the snake on
///
/// ```text
/// A  --f-->  B --g'--> C'
/// |s         |=        |r
/// A' --f'--> B --g-->  C
/// ```
pub fn cohomology_two_ways_with<C: Category>(
    cat: &C,
    f: &C::Morphism,
    f_cokernel: Cokernel<C::Object, C::Morphism>,
    g: &C::Morphism,
    g_kernel: Kernel<C::Object, C::Morphism>,
) -> Result<ChainCohomologyOf<C>> {
    if cat.target(f) != cat.source(g) {
        return Err(Error::NotComposable("f then g".into()));
    }
    if !cat.is_zero(&cat.compose(g, f)?) {
        return Err(Error::Hypothesis("g∘f is not zero".into()));
    }
    cat.require_short_exact(f, &f_cokernel.projection, "f and its cokernel", true)?;
    cat.require_short_exact(&g_kernel.inclusion, g, "g and its kernel", true)?;
    let g_prime = &f_cokernel.projection;
    let f_prime = &g_kernel.inclusion;

    let r = step("r: C' -> C", cat.cokernel_colift(f, g_prime, g))?;
    cat.require_deflation(&r, "r: C' -> C")?;
    let s = step("s: A -> A'", cat.kernel_lift(g, f_prime, f))?;
    let cancellation = inflation_cancellation(cat, &s, f_prime, g, g_prime).map_err(|e| as_conclusion("s", e))?;
    if !cancellation.verified {
        return Err(Error::Conclusion("s: A -> A' is not an inflation".into()));
    }
    let h_prime = step("coker(s)", cat.cokernel(&s))?;

    let r_fac = AdmissibleFactorization::of_deflation(cat, &r)?;
    let s_fac = AdmissibleFactorization::of_inflation(cat, &s, h_prime.clone())?;
    let id_fac = AdmissibleFactorization::identity(cat, &cat.source(g))?;
    let h = r_fac.kernel.clone();
    let diagram = SnakeDiagram {
        phi1: f.clone(),
        phi2: g_prime.clone(),
        phi1_prime: f_prime.clone(),
        phi2_prime: g.clone(),
        f: [s_fac, id_fac, r_fac],
    };
    let snake = snake(cat, &diagram).map_err(|e| as_conclusion("comparison snake", e))?;
    let iso = snake.delta.clone();
    let iso_inverse = cat.checked_inverse(&iso);
    let iso_is_deflation = cat.is_deflation(&iso);
    let iso_is_inflation = cat.is_inflation(&iso);
    Ok(ChainCohomology {
        cokernel_of_f: f_cokernel,
        r,
        h,
        kernel_of_g: g_kernel,
        s,
        cancellation,
        h_prime,
        iso,
        iso_inverse,
        iso_is_deflation,
        iso_is_inflation,
        snake,
    })
}

/// `C' -> K'` through the middle object: the deflation `r` of one chain
/// followed by the inflation `s` of the next. Its kernel is the first
/// chain's `H` and its cokernel the second chain's `H'`.
fn gamma<C: Category>(cat: &C, lower: &ChainCohomologyOf<C>, upper: &ChainCohomologyOf<C>) -> Result<FactorizationOf<C>> {
    Ok(AdmissibleFactorization {
        morphism: cat.compose(&upper.s, &lower.r)?,
        deflation_part: lower.r.clone(),
        inflation_part: upper.s.clone(),
        image: cat.target(&lower.r),
        kernel: lower.h.clone(),
        cokernel: upper.h_prime.clone(),
    })
}

/// An object with an admissible square-zero endomorphism.
#[derive(Clone, Debug)]
pub struct DifferentialObject<O, M> {
    pub carrier: O,
    pub d: AdmissibleFactorization<O, M>,
}

pub type DifferentialObjectOf<C> = DifferentialObject<<C as Category>::Object, <C as Category>::Morphism>;

impl<O, M> DifferentialObject<O, M>
where
    O: Clone + PartialEq + std::fmt::Debug,
    M: Clone + std::fmt::Debug,
{
    pub fn new<C: Category<Object = O, Morphism = M>>(cat: &C, d: &M) -> Result<Self> {
        let fac = factorize(cat, d, "d")?;
        Self::with_factorization(cat, fac)
    }

    pub fn with_factorization<C: Category<Object = O, Morphism = M>>(
        cat: &C,
        d: AdmissibleFactorization<O, M>,
    ) -> Result<Self> {
        let carrier = cat.source(&d.morphism);
        if cat.target(&d.morphism) != carrier {
            return Err(Error::Hypothesis("d is not an endomorphism".into()));
        }
        if !cat.is_zero(&cat.compose(&d.morphism, &d.morphism)?) {
            return Err(Error::Hypothesis("d∘d is not zero".into()));
        }
        d.validate(cat)?;
        Ok(DifferentialObject { carrier, d })
    }

    pub fn differential(&self) -> &M {
        &self.d.morphism
    }
}

/// `H(A)` of a differential object: the cohomology of `I -> A -> I`.
#[derive(Clone, Debug)]
pub struct DifferentialCohomology<O, M> {
    pub chain: ChainCohomology<O, M>,
    /// `C -> I -> K`, whose kernel and cokernel are both `H(A)`.
    pub gamma: AdmissibleFactorization<O, M>,
}

pub type DifferentialCohomologyOf<C> = DifferentialCohomology<<C as Category>::Object, <C as Category>::Morphism>;

impl<O, M> DifferentialCohomology<O, M> {
    pub fn object(&self) -> &O {
        &self.chain.h.object
    }
}

pub fn differential_cohomology<C: Category>(
    cat: &C,
    x: &DifferentialObjectOf<C>,
) -> Result<DifferentialCohomologyOf<C>> {
    let d = &x.d;
    if !cat.is_zero(&cat.compose(&d.deflation_part, &d.inflation_part)?) {
        return Err(Error::Conclusion("I -> A -> I is not zero".into()));
    }
    let chain = cohomology_two_ways_with(cat, &d.inflation_part, d.cokernel.clone(), &d.deflation_part, d.kernel.clone())?;
    let gamma = gamma(cat, &chain, &chain)?;
    Ok(DifferentialCohomology { chain, gamma })
}

/// `H(phi): H(X) -> H(Y)` for a morphism of differential objects.
pub fn induced_cohomology_map<C: Category>(
    cat: &C,
    x: &DifferentialObjectOf<C>,
    hx: &DifferentialCohomologyOf<C>,
    y: &DifferentialObjectOf<C>,
    hy: &DifferentialCohomologyOf<C>,
    phi: &C::Morphism,
) -> Result<C::Morphism> {
    if !cat.equal(&cat.compose(phi, x.differential())?, &cat.compose(y.differential(), phi)?) {
        return Err(Error::Hypothesis("phi does not commute with the differentials".into()));
    }
    let c_map = step(
        "C(X) -> C(Y)",
        cat.cokernel_colift(&x.d.inflation_part, &x.d.cokernel.projection, &cat.compose(&y.d.cokernel.projection, phi)?),
    )?;
    step(
        "H(X) -> H(Y)",
        cat.kernel_lift(&hy.chain.r, &hy.chain.h.inclusion, &cat.compose(&c_map, &hx.chain.h.inclusion)?),
    )
}

/// The extended snake on the `C -> K` diagram and the maps it induces on
/// cohomology.
#[derive(Clone, Debug)]
pub struct Connecting<O, M> {
    pub diagram: SnakeDiagram<O, M>,
    pub extended: ExtendedSnake<O, M>,
    /// `ker(C'' -> ker(delta')) -> H(A'')`.
    pub to_kernel: M,
    /// `coker(ker(psi2') -> K) -> H'(A)`.
    pub from_cokernel: M,
    /// `H(A) -> H(A')`.
    pub u: M,
    /// `H(A') -> H(A'')`.
    pub v: M,
    /// `H(A'') -> H'(A)`.
    pub delta: M,
}

/// `c_row` is a snake whose cokernel row is `C -> C' -> C''` and `k_row`
/// one whose kernel row is `K -> K' -> K''`; `gammas` are the three maps
/// `C -> K`. The cokernel row is shortened by `alpha: C -> ker(psi2')` and
/// the kernel row by `ker(delta') -> K''`, and the snake extended back.
fn connect<C: Category>(
    cat: &C,
    c_row: &SnakeResultOf<C>,
    k_row: &SnakeResultOf<C>,
    gammas: [&FactorizationOf<C>; 3],
) -> Result<Connecting<C::Object, C::Morphism>> {
    let wc = &c_row.witnesses;
    let wk = &k_row.witnesses;
    let f1 = step(
        "ker(psi2') -> K",
        cat.cokernel_colift(&wc.ker_psi1_prime.inclusion, &wc.alpha, &gammas[0].morphism),
    )?;
    let f3 = step(
        "C'' -> ker(delta')",
        cat.kernel_lift(&wk.delta_prime, &wk.ker_delta_prime.inclusion, &gammas[2].morphism),
    )?;
    let f1_fac = factorize(cat, &f1, "ker(psi2') -> K").map_err(|e| as_conclusion("connecting diagram", e))?;
    let f3_fac = factorize(cat, &f3, "C'' -> ker(delta')").map_err(|e| as_conclusion("connecting diagram", e))?;
    let diagram = SnakeDiagram {
        phi1: wc.ker_psi2_prime.inclusion.clone(),
        phi2: c_row.psi2_prime.clone(),
        phi1_prime: k_row.psi1.clone(),
        phi2_prime: wk.psi2_deflation.clone(),
        f: [f1_fac, gammas[1].clone(), f3_fac],
    };
    let extended = snake_extended_with(
        cat,
        &diagram,
        &wc.alpha,
        &wk.ker_delta_prime.inclusion,
        gammas[0].clone(),
        gammas[2].clone(),
    )
    .map_err(|e| as_conclusion("connecting snake", e))?;
    let base = &extended.base;

    let k3 = &base.kernels[2];
    let to_kernel = step(
        "K3 -> H(A'')",
        cat.kernel_lift(&gammas[2].deflation_part, &gammas[2].kernel.inclusion, &k3.inclusion),
    )?;
    let to_kernel_inverse = cat
        .checked_inverse(&to_kernel)
        .ok_or_else(|| Error::Conclusion("K3 -> H(A'') is not an isomorphism".into()))?;
    let f1 = &diagram.f[0];
    let from_cokernel = step(
        "C1 -> H'(A)",
        cat.cokernel_colift(&f1.inflation_part, &f1.cokernel.projection, &gammas[0].cokernel.projection),
    )?;
    if !cat.is_iso(&from_cokernel) {
        return Err(Error::Conclusion("C1 -> H'(A) is not an isomorphism".into()));
    }
    let u = extended.sequence[0].clone();
    let v = cat.compose(&to_kernel, &extended.sequence[1])?;
    let delta = cat.compose_all(&[&from_cokernel, &base.delta, &to_kernel_inverse])?;
    Ok(Connecting { diagram, extended, to_kernel, from_cokernel, u, v, delta })
}

/// A short exact sequence `A -i-> A' -p-> A''` of differential objects.
#[derive(Clone, Debug)]
pub struct DifferentialSes<O, M> {
    pub a: DifferentialObject<O, M>,
    pub a_prime: DifferentialObject<O, M>,
    pub a_pp: DifferentialObject<O, M>,
    pub i: M,
    pub p: M,
}

/// The triangle `H(A) -> H(A') -> H(A'') -> H(A)`.
#[derive(Clone, Debug)]
pub struct ExactTriangle<O, M> {
    pub cohomology: [DifferentialCohomology<O, M>; 3],
    /// The snake with the differentials as verticals.
    pub first: SnakeResult<O, M>,
    pub connecting: Connecting<O, M>,
    pub u: M,
    pub v: M,
    /// `H(A'') -> H(A)`.
    pub delta: M,
    /// Exactness at `H(A)`, `H(A')`, `H(A'')`.
    pub exact_at: [bool; 3],
}

impl<O, M> ExactTriangle<O, M> {
    pub fn is_exact(&self) -> bool {
        self.exact_at.iter().all(|&b| b) && self.connecting.extended.is_verified()
    }
}

pub fn exact_triangle<C: Category>(
    cat: &C,
    ses: &DifferentialSes<C::Object, C::Morphism>,
) -> Result<ExactTriangle<C::Object, C::Morphism>> {
    let (x, xp, xpp) = (&ses.a, &ses.a_prime, &ses.a_pp);
    cat.require_short_exact(&ses.i, &ses.p, "A -> A' -> A''", true)?;
    if !cat.equal(&cat.compose(&ses.i, x.differential())?, &cat.compose(xp.differential(), &ses.i)?) {
        return Err(Error::Hypothesis("i does not commute with the differentials".into()));
    }
    if !cat.equal(&cat.compose(&ses.p, xp.differential())?, &cat.compose(xpp.differential(), &ses.p)?) {
        return Err(Error::Hypothesis("p does not commute with the differentials".into()));
    }
    let h = [
        differential_cohomology(cat, x)?,
        differential_cohomology(cat, xp)?,
        differential_cohomology(cat, xpp)?,
    ];
    let diagram = SnakeDiagram {
        phi1: ses.i.clone(),
        phi2: ses.p.clone(),
        phi1_prime: ses.i.clone(),
        phi2_prime: ses.p.clone(),
        f: [x.d.clone(), xp.d.clone(), xpp.d.clone()],
    };
    let first = snake(cat, &diagram).map_err(|e| as_conclusion("snake on the differentials", e))?;
    let connecting = connect(cat, &first, &first, [&h[0].gamma, &h[1].gamma, &h[2].gamma])?;
    let back = h[0]
        .chain
        .iso_inverse
        .clone()
        .ok_or_else(|| Error::Conclusion("H(A) -> H'(A) is not invertible".into()))?;
    let delta = cat.compose(&back, &connecting.delta)?;
    let (u, v) = (connecting.u.clone(), connecting.v.clone());
    let exact_at = [
        check_exact_at(cat, &delta, &u)?,
        check_exact_at(cat, &u, &v)?,
        check_exact_at(cat, &v, &delta)?,
    ];
    Ok(ExactTriangle { cohomology: h, first, connecting, u, v, delta, exact_at })
}

/// A bounded complex `A_lo -> … -> A_hi` with admissible differentials;
/// objects outside the window are zero.
#[derive(Clone, Debug)]
pub struct AdmissibleComplex<O, M> {
    pub lo: i64,
    pub objects: Vec<O>,
    /// `d_i: A_i -> A_{i+1}` for `lo ≤ i < hi`.
    pub differentials: Vec<AdmissibleFactorization<O, M>>,
}

pub type AdmissibleComplexOf<C> = AdmissibleComplex<<C as Category>::Object, <C as Category>::Morphism>;

impl<O, M> AdmissibleComplex<O, M>
where
    O: Clone + PartialEq + std::fmt::Debug,
    M: Clone + std::fmt::Debug,
{
    pub fn new<C: Category<Object = O, Morphism = M>>(cat: &C, lo: i64, differentials: &[M]) -> Result<Self> {
        let mut objects: Vec<O> = differentials.iter().map(|d| cat.source(d)).collect();
        if let Some(last) = differentials.last() {
            objects.push(cat.target(last));
        }
        Self::with_objects(cat, lo, objects, differentials)
    }

    /// Like [`new`](Self::new) but with explicit objects, so that a complex
    /// may be a single object or empty.
    pub fn with_objects<C: Category<Object = O, Morphism = M>>(
        cat: &C,
        lo: i64,
        objects: Vec<O>,
        differentials: &[M],
    ) -> Result<Self> {
        let mut facs = Vec::with_capacity(differentials.len());
        for (n, d) in differentials.iter().enumerate() {
            facs.push(factorize(cat, d, &format!("d{}", lo + n as i64))?);
        }
        Self::from_factorizations(cat, lo, objects, facs)
    }

    pub fn from_factorizations<C: Category<Object = O, Morphism = M>>(
        cat: &C,
        lo: i64,
        objects: Vec<O>,
        differentials: Vec<AdmissibleFactorization<O, M>>,
    ) -> Result<Self> {
        if differentials.len() + 1 != objects.len().max(1) {
            return Err(Error::Invalid(format!(
                "{} objects but {} differentials",
                objects.len(),
                differentials.len()
            )));
        }
        for (n, d) in differentials.iter().enumerate() {
            let deg = lo + n as i64;
            if cat.source(&d.morphism) != objects[n] || cat.target(&d.morphism) != objects[n + 1] {
                return Err(Error::Invalid(format!("d{deg} has the wrong source or target")));
            }
        }
        for (n, pair) in differentials.windows(2).enumerate() {
            if !cat.is_zero(&cat.compose(&pair[1].morphism, &pair[0].morphism)?) {
                let deg = lo + n as i64;
                return Err(Error::Hypothesis(format!("d{}∘d{deg} is not zero", deg + 1)));
            }
        }
        Ok(AdmissibleComplex { lo, objects, differentials })
    }

    /// Last degree of the window; `lo - 1` for an empty complex.
    pub fn hi(&self) -> i64 {
        self.lo + self.objects.len() as i64 - 1
    }

    pub fn object<C: Category<Object = O, Morphism = M>>(&self, cat: &C, i: i64) -> O {
        match usize::try_from(i - self.lo) {
            Ok(k) if k < self.objects.len() => self.objects[k].clone(),
            _ => cat.zero_object(),
        }
    }

    /// Factorization of `d_i`, zero outside the window.
    pub fn differential<C: Category<Object = O, Morphism = M>>(
        &self,
        cat: &C,
        i: i64,
    ) -> Result<AdmissibleFactorization<O, M>> {
        match usize::try_from(i - self.lo) {
            Ok(k) if k < self.differentials.len() => Ok(self.differentials[k].clone()),
            _ => zero_factorization(cat, &self.object(cat, i), &self.object(cat, i + 1)),
        }
    }

    /// `H^i`, as the kernel of `C_{i-1} -> Z_i` and as the cokernel of
    /// `Z_{i-1} -> K_i`, with the comparison isomorphism.
    pub fn cohomology<C: Category<Object = O, Morphism = M>>(
        &self,
        cat: &C,
        i: i64,
    ) -> Result<ChainCohomology<O, M>> {
        let before = self.differential(cat, i - 1)?;
        let after = self.differential(cat, i)?;
        cohomology_two_ways_with(cat, &before.inflation_part, before.cokernel, &after.deflation_part, after.kernel)
            .map_err(|e| e.at_step(&format!("H^{i}")))
    }
}

/// Checks that `maps` (one per degree of `a`'s window) commute with the
/// differentials of `a` and `b`, which must share the window.
pub fn check_chain_map<C: Category>(
    cat: &C,
    a: &AdmissibleComplexOf<C>,
    b: &AdmissibleComplexOf<C>,
    maps: &[C::Morphism],
) -> Result<()> {
    if a.lo != b.lo || a.objects.len() != b.objects.len() || maps.len() != a.objects.len() {
        return Err(Error::Invalid("chain map windows do not match".into()));
    }
    for (n, f) in maps.iter().enumerate() {
        if cat.source(f) != a.objects[n] || cat.target(f) != b.objects[n] {
            return Err(Error::Invalid(format!("component {} has the wrong source or target", a.lo + n as i64)));
        }
    }
    for n in 0..a.differentials.len() {
        let lhs = cat.compose(&maps[n + 1], &a.differentials[n].morphism)?;
        let rhs = cat.compose(&b.differentials[n].morphism, &maps[n])?;
        if !cat.equal(&lhs, &rhs) {
            return Err(Error::Hypothesis(format!("chain map does not commute at degree {}", a.lo + n as i64)));
        }
    }
    Ok(())
}

/// `H^i(f): H^i(A) -> H^i(B)` for a chain map `f` given by its components
/// on the common window of `a` and `b`.
pub fn induced_complex_map<C: Category>(
    cat: &C,
    a: &AdmissibleComplexOf<C>,
    ha: &ChainCohomologyOf<C>,
    hb: &ChainCohomologyOf<C>,
    maps: &[C::Morphism],
    i: i64,
) -> Result<C::Morphism> {
    let component = match usize::try_from(i - a.lo) {
        Ok(k) if k < maps.len() => maps[k].clone(),
        _ => cat.zero_morphism(&a.object(cat, i), &cat.source(&hb.cokernel_of_f.projection)),
    };
    let before = a.differential(cat, i - 1)?;
    let c_map = step(
        "C_{i-1}(A) -> C_{i-1}(B)",
        cat.cokernel_colift(
            &before.inflation_part,
            &ha.cokernel_of_f.projection,
            &cat.compose(&hb.cokernel_of_f.projection, &component)?,
        ),
    )?;
    step(
        "H^i(A) -> H^i(B)",
        cat.kernel_lift(&hb.r, &hb.h.inclusion, &cat.compose(&c_map, &ha.h.inclusion)?),
    )
}

/// A pointwise short exact sequence of complexes over a common window.
#[derive(Clone, Debug)]
pub struct ComplexSes<O, M> {
    pub a: AdmissibleComplex<O, M>,
    pub a_prime: AdmissibleComplex<O, M>,
    pub a_pp: AdmissibleComplex<O, M>,
    pub i: Vec<M>,
    pub p: Vec<M>,
}

impl<O, M> ComplexSes<O, M>
where
    O: Clone + PartialEq + std::fmt::Debug,
    M: Clone + std::fmt::Debug,
{
    pub fn validate<C: Category<Object = O, Morphism = M>>(&self, cat: &C) -> Result<()> {
        check_chain_map(cat, &self.a, &self.a_prime, &self.i)?;
        check_chain_map(cat, &self.a_prime, &self.a_pp, &self.p)?;
        for (n, (i, p)) in self.i.iter().zip(&self.p).enumerate() {
            cat.require_short_exact(i, p, &format!("degree {}", self.a.lo + n as i64), true)?;
        }
        Ok(())
    }

    fn row<C: Category<Object = O, Morphism = M>>(&self, cat: &C, j: i64) -> (M, M) {
        match usize::try_from(j - self.a.lo) {
            Ok(k) if k < self.i.len() => (self.i[k].clone(), self.p[k].clone()),
            _ => {
                let id = cat.identity(&cat.zero_object());
                (id.clone(), id)
            }
        }
    }
}

/// Cohomology of the three complexes at one degree with the maps between
/// them.
#[derive(Clone, Debug)]
pub struct LesDegree<O, M> {
    pub degree: i64,
    pub cohomology: [ChainCohomology<O, M>; 3],
    pub connecting: Connecting<O, M>,
    /// `H^i(A) -> H^i(A')`.
    pub u: M,
    /// `H^i(A') -> H^i(A'')`.
    pub v: M,
    /// `H^i(A'') -> H^{i+1}(A)`.
    pub delta: M,
}

#[derive(Clone, Debug)]
pub struct CohomologyLes<O, M> {
    pub degrees: Vec<LesDegree<O, M>>,
    /// `0 -> H^lo(A) -> … -> H^hi(A'') -> H^{hi+1}(A) -> 0`.
    pub sequence: Vec<M>,
    pub verdict: LongExactVerdict,
}

impl<O, M> CohomologyLes<O, M> {
    pub fn is_exact(&self) -> bool {
        self.verdict.is_exact()
    }
}

/// The long exact cohomology sequence of a pointwise short exact sequence
/// of complexes. At each degree the snake on `C_{i-1} -> K_{i+1}` supplies
/// the connecting morphism.
pub fn les_of_complexes<C: Category>(
    cat: &C,
    ses: &ComplexSes<C::Object, C::Morphism>,
) -> Result<CohomologyLes<C::Object, C::Morphism>> {
    ses.validate(cat)?;
    let complexes = [&ses.a, &ses.a_prime, &ses.a_pp];
    let (lo, hi) = (ses.a.lo, ses.a.hi());

    // Snakes with the differentials d_j as verticals, j in lo-1..=hi+1.
    let mut snakes = Vec::new();
    for j in lo - 1..=hi + 1 {
        let (i0, p0) = ses.row(cat, j);
        let (i1, p1) = ses.row(cat, j + 1);
        let mut f = Vec::with_capacity(3);
        for x in complexes {
            f.push(x.differential(cat, j)?);
        }
        let diagram = SnakeDiagram {
            phi1: i0,
            phi2: p0,
            phi1_prime: i1,
            phi2_prime: p1,
            f: f.try_into().expect("three complexes"),
        };
        snakes.push(snake(cat, &diagram).map_err(|e| as_conclusion(&format!("snake on d{j}"), e))?);
    }
    let snake_at = |j: i64| &snakes[(j - (lo - 1)) as usize];

    // Cohomology of each complex at lo..=hi+1.
    let mut chains: Vec<[ChainCohomologyOf<C>; 3]> = Vec::new();
    for i in lo..=hi + 1 {
        chains.push([
            complexes[0].cohomology(cat, i)?,
            complexes[1].cohomology(cat, i)?,
            complexes[2].cohomology(cat, i)?,
        ]);
    }

    let mut degrees = Vec::new();
    for i in lo..=hi {
        let k = (i - lo) as usize;
        let gammas = [
            gamma(cat, &chains[k][0], &chains[k + 1][0])?,
            gamma(cat, &chains[k][1], &chains[k + 1][1])?,
            gamma(cat, &chains[k][2], &chains[k + 1][2])?,
        ];
        let connecting = connect(cat, snake_at(i - 1), snake_at(i + 1), [&gammas[0], &gammas[1], &gammas[2]])
            .map_err(|e| e.at_step(&format!("degree {i}")))?;
        let back = chains[k + 1][0]
            .iso_inverse
            .clone()
            .ok_or_else(|| Error::Conclusion(format!("H^{} comparison is not invertible", i + 1)))?;
        let delta = cat.compose(&back, &connecting.delta)?;
        degrees.push(LesDegree {
            degree: i,
            cohomology: chains[k].clone(),
            u: connecting.u.clone(),
            v: connecting.v.clone(),
            delta,
            connecting,
        });
    }

    let mut sequence = Vec::new();
    if let Some(first) = degrees.first() {
        sequence.push(cat.from_zero(first.cohomology[0].object()));
    }
    for d in &degrees {
        sequence.push(d.u.clone());
        sequence.push(d.v.clone());
        sequence.push(d.delta.clone());
    }
    if let Some(last) = degrees.last() {
        sequence.push(cat.to_zero(&cat.target(&last.delta)));
    }
    let verdict = check_long_exact_auto(cat, &sequence)?;
    Ok(CohomologyLes { degrees, sequence, verdict })
}

/// Kernel of a pointwise deflation of complexes, with the admissible
/// factorizations `K_i -> I_i'' -> K_{i+1}` of its differentials.
#[derive(Clone, Debug)]
pub struct KernelComplex<O, M> {
    pub complex: AdmissibleComplex<O, M>,
    /// `K_i -> A_i`.
    pub inclusions: Vec<M>,
    /// `I_i -> I_i'`, the induced deflations between images.
    pub image_maps: Vec<M>,
}

pub fn kernel_complex<C: Category>(
    cat: &C,
    a: &AdmissibleComplexOf<C>,
    b: &AdmissibleComplexOf<C>,
    f: &[C::Morphism],
) -> Result<KernelComplex<C::Object, C::Morphism>> {
    check_chain_map(cat, a, b, f)?;
    let mut kernels = Vec::with_capacity(f.len());
    for (n, fi) in f.iter().enumerate() {
        if !cat.is_deflation(fi) {
            return Err(Error::Hypothesis(format!("component {} is not a deflation", a.lo + n as i64)));
        }
        kernels.push(step("ker(f_i)", cat.kernel(fi))?);
    }
    let mut differentials = Vec::with_capacity(a.differentials.len());
    let mut image_maps = Vec::with_capacity(a.differentials.len());
    for n in 0..a.differentials.len() {
        let (da, db) = (&a.differentials[n], &b.differentials[n]);
        let u = step(
            "I -> I'",
            cat.cokernel_colift(&da.kernel.inclusion, &da.deflation_part, &cat.compose(&db.deflation_part, &f[n])?),
        )?;
        cat.require_deflation(&u, "I -> I'")?;
        let i_pp = cat.deflation_kernel(&u, "I -> I'")?;
        let down = step(
            "K_i -> I''",
            cat.kernel_lift(&u, &i_pp.inclusion, &cat.compose(&da.deflation_part, &kernels[n].inclusion)?),
        )?;
        let up = step(
            "I'' -> K_{i+1}",
            cat.kernel_lift(&f[n + 1], &kernels[n + 1].inclusion, &cat.compose(&da.inflation_part, &i_pp.inclusion)?),
        )?;
        let kernel = cat.deflation_kernel(&down, "K_i -> I''")?;
        let cokernel = step("coker(I'' -> K_{i+1})", cat.cokernel(&up))?;
        let fac = AdmissibleFactorization {
            morphism: cat.compose(&up, &down)?,
            deflation_part: down,
            inflation_part: up,
            image: i_pp.object.clone(),
            kernel,
            cokernel,
        };
        fac.validate(cat).map_err(|e| as_conclusion("kernel complex differential", e))?;
        let direct = step(
            "K_i -> K_{i+1}",
            cat.kernel_lift(
                &f[n + 1],
                &kernels[n + 1].inclusion,
                &cat.compose(&da.morphism, &kernels[n].inclusion)?,
            ),
        )?;
        cat.require_equal(&direct, &fac.morphism, "K_i -> I'' -> K_{i+1} = induced differential")?;
        differentials.push(fac);
        image_maps.push(u);
    }
    let objects = kernels.iter().map(|k| k.object.clone()).collect();
    let complex = AdmissibleComplex::from_factorizations(cat, a.lo, objects, differentials)?;
    Ok(KernelComplex { complex, inclusions: kernels.into_iter().map(|k| k.inclusion).collect(), image_maps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgab::{AbMorphism, Fgab, FpAbelianGroup};

    fn m(src: &FpAbelianGroup, tgt: &FpAbelianGroup, data: &[i64]) -> AbMorphism {
        Fgab.morphism(src, tgt, data).unwrap()
    }

    fn z(n: usize) -> FpAbelianGroup {
        FpAbelianGroup::free(n)
    }

    #[test]
    fn times_four_then_reduction_mod_two() {
        let cat = Fgab;
        let z2 = FpAbelianGroup::cyclic(2);
        let h = cohomology_two_ways(&cat, &m(&z(1), &z(1), &[4]), &m(&z(1), &z2, &[1])).unwrap();
        assert!(h.is_verified());
        assert_eq!(h.object().to_string(), "Z/2");
        assert_eq!(h.h_prime.object.to_string(), "Z/2");
    }

    #[test]
    fn exact_chain_has_zero_cohomology() {
        let cat = Fgab;
        let z2 = FpAbelianGroup::cyclic(2);
        let h = cohomology_two_ways(&cat, &m(&z(1), &z(1), &[2]), &m(&z(1), &z2, &[1])).unwrap();
        assert!(h.is_verified());
        assert!(cat.is_zero_object(h.object()));
    }

    #[test]
    fn zero_chain_gives_whole_object() {
        let cat = Fgab;
        let b = FpAbelianGroup::direct_sum(&[&z(1), &FpAbelianGroup::cyclic(3)]);
        let h = cohomology_two_ways(&cat, &cat.from_zero(&b), &cat.to_zero(&b)).unwrap();
        assert!(h.is_verified());
        assert_eq!(h.object().invariants(), b.invariants());
    }

    #[test]
    fn differential_object_examples() {
        let cat = Fgab;
        let a = z(2);
        let cases: [(&[i64], &str); 3] = [(&[0, 1, 0, 0], "0"), (&[0, 2, 0, 0], "Z/2"), (&[0, 0, 0, 0], "Z^2")];
        for (d, expected) in cases {
            let x = DifferentialObject::new(&cat, &m(&a, &a, d)).unwrap();
            let h = differential_cohomology(&cat, &x).unwrap();
            assert!(h.chain.is_verified());
            assert_eq!(h.object().to_string(), expected);
        }
    }

    #[test]
    fn square_nonzero_differential_is_rejected() {
        let a = z(1);
        assert!(DifferentialObject::new(&Fgab, &m(&a, &a, &[1])).unwrap_err().is_hypothesis());
    }

    #[test]
    fn induced_maps_compose() {
        let cat = Fgab;
        let a = z(2);
        let x = DifferentialObject::new(&cat, &m(&a, &a, &[0, 2, 0, 0])).unwrap();
        let hx = differential_cohomology(&cat, &x).unwrap();
        let id = induced_cohomology_map(&cat, &x, &hx, &x, &hx, &cat.identity(&a)).unwrap();
        assert!(cat.equal(&id, &cat.identity(hx.object())));
        let three = induced_cohomology_map(&cat, &x, &hx, &x, &hx, &cat.identity(&a).scale(3)).unwrap();
        assert!(cat.equal(&three, &cat.identity(hx.object())));
        let two = induced_cohomology_map(&cat, &x, &hx, &x, &hx, &cat.identity(&a).scale(2)).unwrap();
        assert!(cat.is_zero(&two));
    }

    /// `A = (Z, 0)`, `A'' = (Z, 0)` and `A' = (Z², [[0,2],[0,0]])`: lifting
    /// the generator of `H(A'')` and applying the differential gives `2`.
    #[test]
    fn triangle_with_nonzero_connecting_map() {
        let cat = Fgab;
        let zero_d = |g: &FpAbelianGroup| DifferentialObject::new(&cat, &cat.zero_morphism(g, g)).unwrap();
        let ses = DifferentialSes {
            a: zero_d(&z(1)),
            a_prime: DifferentialObject::new(&cat, &m(&z(2), &z(2), &[0, 2, 0, 0])).unwrap(),
            a_pp: zero_d(&z(1)),
            i: m(&z(1), &z(2), &[1, 0]),
            p: m(&z(2), &z(1), &[0, 1]),
        };
        let t = exact_triangle(&cat, &ses).unwrap();
        assert!(t.is_exact());
        assert_eq!(t.cohomology[1].object().to_string(), "Z/2");
        assert_eq!(t.delta.matrix(), &crate::IntMatrix::from_i64(1, 1, &[2]));
    }

    #[test]
    fn split_triangle_has_zero_connecting_map() {
        let cat = Fgab;
        let x = DifferentialObject::new(&cat, &m(&z(2), &z(2), &[0, 2, 0, 0])).unwrap();
        let y = DifferentialObject::new(&cat, &m(&z(2), &z(2), &[0, 3, 0, 0])).unwrap();
        let sum = DifferentialObject::new(&cat, &cat.direct_sum_map(&[x.differential(), y.differential()])).unwrap();
        let ses = DifferentialSes {
            i: cat.injection(&[&z(2), &z(2)], 0),
            p: cat.projection(&[&z(2), &z(2)], 1),
            a: x,
            a_prime: sum,
            a_pp: y,
        };
        let t = exact_triangle(&cat, &ses).unwrap();
        assert!(t.is_exact());
        assert!(cat.is_zero(&t.delta));
        assert_eq!(t.cohomology[1].object().to_string(), "Z/6");
    }

    fn circle() -> AdmissibleComplexOf<Fgab> {
        AdmissibleComplex::new(&Fgab, -1, &[m(&z(2), &z(2), &[-1, -1, 1, 1])]).unwrap()
    }

    #[test]
    fn circle_cohomology() {
        let cat = Fgab;
        let c = circle();
        for i in [-1, 0] {
            let h = c.cohomology(&cat, i).unwrap();
            assert!(h.is_verified());
            assert_eq!(h.object().to_string(), "Z");
        }
        assert!(cat.is_zero_object(c.cohomology(&cat, 3).unwrap().object()));
    }

    #[test]
    fn les_for_identity_inclusion() {
        let cat = Fgab;
        let c = circle();
        let zero = AdmissibleComplex::with_objects(&cat, -1, vec![cat.zero_object(); 2], &[cat.identity(&cat.zero_object())]).unwrap();
        let ses = ComplexSes {
            i: c.objects.iter().map(|o| cat.identity(o)).collect(),
            p: c.objects.iter().map(|o| cat.to_zero(o)).collect(),
            a: c.clone(),
            a_prime: c,
            a_pp: zero,
        };
        let les = les_of_complexes(&cat, &ses).unwrap();
        assert!(les.is_exact());
        for d in &les.degrees {
            assert!(cat.is_iso(&d.u));
        }
    }

    #[test]
    fn les_for_coefficient_sequence_on_circle() {
        let cat = Fgab;
        let c = circle();
        let z2 = FpAbelianGroup::cyclic(2);
        let z2sq = FpAbelianGroup::direct_sum(&[&z2, &z2]);
        let reduce = AbMorphism::new(z(2), z2sq.clone(), crate::IntMatrix::identity(2)).unwrap();
        let c2 = AdmissibleComplex::new(&cat, -1, &[m(&z2sq, &z2sq, &[1, 1, 1, 1])]).unwrap();
        let two = cat.identity(&z(2)).scale(2);
        let ses = ComplexSes {
            a: c.clone(),
            a_prime: c,
            a_pp: c2,
            i: vec![two.clone(), two],
            p: vec![reduce.clone(), reduce],
        };
        let les = les_of_complexes(&cat, &ses).unwrap();
        assert!(les.is_exact());
        let names: Vec<String> = les.degrees.iter().map(|d| d.cohomology[2].object().to_string()).collect();
        assert_eq!(names, ["Z/2", "Z/2"]);
        assert!(cat.is_zero(&les.degrees[0].delta));
    }

    #[test]
    fn kernel_of_reduction_is_doubled_complex() {
        let cat = Fgab;
        let c = circle();
        let z2 = FpAbelianGroup::cyclic(2);
        let z2sq = FpAbelianGroup::direct_sum(&[&z2, &z2]);
        let reduce = AbMorphism::new(z(2), z2sq.clone(), crate::IntMatrix::identity(2)).unwrap();
        let c2 = AdmissibleComplex::new(&cat, -1, &[m(&z2sq, &z2sq, &[1, 1, 1, 1])]).unwrap();
        let k = kernel_complex(&cat, &c, &c2, &[reduce.clone(), reduce]).unwrap();
        for inc in &k.inclusions {
            assert_eq!(inc.matrix(), &crate::IntMatrix::from_i64(2, 2, &[2, 0, 0, 2]));
        }
        assert!(cat.equal(&k.complex.differentials[0].morphism, &c.differentials[0].morphism));
        let ident = kernel_complex(&cat, &c, &c, &[cat.identity(&z(2)), cat.identity(&z(2))]).unwrap();
        assert!(ident.complex.objects.iter().all(|o| cat.is_zero_object(o)));
    }
}
