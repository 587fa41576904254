//! The snake lemma and its companions.

use crate::category::{AdmissibleFactorization, Category, CategoryExt, Cokernel, FactorizationOf, Kernel};
use crate::engine::exact::{check_long_exact, LongExactVerdict};
use crate::error::{Error, Result};

/// Two short exact rows joined by three admissible verticals:
///
/// ```text
/// A1 --phi1--> A2 --phi2--> A3
/// |f1          |f2          |f3
/// B1 --phi1'-> B2 --phi2'-> B3
/// ```
#[derive(Clone, Debug)]
pub struct SnakeDiagram<O, M> {
    pub phi1: M,
    pub phi2: M,
    pub phi1_prime: M,
    pub phi2_prime: M,
    pub f: [AdmissibleFactorization<O, M>; 3],
}

pub type SnakeDiagramOf<C> = SnakeDiagram<<C as Category>::Object, <C as Category>::Morphism>;

impl<O, M> SnakeDiagram<O, M>
where
    O: Clone + PartialEq + std::fmt::Debug,
    M: Clone + std::fmt::Debug,
{
    /// Builds a diagram, factorizing the verticals with the instance.
    pub fn new<C>(cat: &C, top: (M, M), bottom: (M, M), verticals: [M; 3]) -> Result<Self>
    where
        C: Category<Object = O, Morphism = M>,
    {
        let mut facs = Vec::with_capacity(3);
        for (n, f) in verticals.iter().enumerate() {
            match cat.admissible_factorization(f)? {
                Some(fac) => facs.push(fac),
                None => return Err(Error::Hypothesis(format!("vertical f{} is not admissible", n + 1))),
            }
        }
        let f: [AdmissibleFactorization<O, M>; 3] = facs.try_into().expect("three factorizations");
        Ok(SnakeDiagram { phi1: top.0, phi2: top.1, phi1_prime: bottom.0, phi2_prime: bottom.1, f })
    }

    /// Checks every hypothesis of the snake lemma, naming the first
    /// failing clause.
    pub fn validate<C>(&self, cat: &C) -> Result<()>
    where
        C: Category<Object = O, Morphism = M>,
    {
        let ends = |what: &str, m: &M, src: &M, tgt: &M| -> Result<()> {
            if cat.source(m) != cat.source(src) || cat.target(m) != cat.source(tgt) {
                return Err(Error::Hypothesis(format!("{what} has the wrong source or target")));
            }
            Ok(())
        };
        if cat.target(&self.phi1) != cat.source(&self.phi2) {
            return Err(Error::Hypothesis("top row is not composable".into()));
        }
        if cat.target(&self.phi1_prime) != cat.source(&self.phi2_prime) {
            return Err(Error::Hypothesis("bottom row is not composable".into()));
        }
        ends("f1", &self.f[0].morphism, &self.phi1, &self.phi1_prime)?;
        ends("f2", &self.f[1].morphism, &self.phi2, &self.phi2_prime)?;
        if cat.source(&self.f[2].morphism) != cat.target(&self.phi2)
            || cat.target(&self.f[2].morphism) != cat.target(&self.phi2_prime)
        {
            return Err(Error::Hypothesis("f3 has the wrong source or target".into()));
        }
        cat.require_short_exact(&self.phi1, &self.phi2, "top row", true)?;
        cat.require_short_exact(&self.phi1_prime, &self.phi2_prime, "bottom row", true)?;
        let left = (cat.compose(&self.f[1].morphism, &self.phi1)?, cat.compose(&self.phi1_prime, &self.f[0].morphism)?);
        if !cat.equal(&left.0, &left.1) {
            return Err(Error::Hypothesis("left square f2∘phi1 = phi1'∘f1 does not commute".into()));
        }
        let right =
            (cat.compose(&self.f[2].morphism, &self.phi2)?, cat.compose(&self.phi2_prime, &self.f[1].morphism)?);
        if !cat.equal(&right.0, &right.1) {
            return Err(Error::Hypothesis("right square f3∘phi2 = phi2'∘f2 does not commute".into()));
        }
        for (n, fac) in self.f.iter().enumerate() {
            fac.validate(cat)
                .map_err(|e| Error::Hypothesis(format!("vertical f{}: {}", n + 1, strip(&e))))?;
        }
        Ok(())
    }

    pub fn kernels(&self) -> [&Kernel<O, M>; 3] {
        [&self.f[0].kernel, &self.f[1].kernel, &self.f[2].kernel]
    }

    pub fn cokernels(&self) -> [&Cokernel<O, M>; 3] {
        [&self.f[0].cokernel, &self.f[1].cokernel, &self.f[2].cokernel]
    }
}

fn strip(e: &Error) -> String {
    match e {
        Error::Hypothesis(m) | Error::Conclusion(m) | Error::Precondition(m) | Error::Invalid(m) => m.clone(),
        other => other.to_string(),
    }
}

/// The intermediate objects and maps of the construction.
#[derive(Clone, Debug)]
pub struct SnakeWitnesses<O, M> {
    /// `phi2'': I2 -> I3`, a deflation.
    pub phi2_pp: M,
    /// `phi1'': J1 -> I2`, the kernel of `phi2''`.
    pub j1: Kernel<O, M>,
    /// `epsilon: J1 -> B1`.
    pub epsilon: M,
    /// `ker(psi2') -> C2`.
    pub ker_psi2_prime: Kernel<O, M>,
    /// `c2': B1 -> ker(psi2')`.
    pub c2_prime: M,
    /// `alpha: C1 -> ker(psi2')`, a deflation with `i∘alpha = psi1'`.
    pub alpha: M,
    /// `i': ker(psi1') -> C1`, computed as the kernel of `alpha`.
    pub ker_psi1_prime: Kernel<O, M>,
    /// `T -> B1`, the kernel of `c2∘phi1'`.
    pub t: Kernel<O, M>,
    /// The isomorphism `J1 -> T` identifying the two kernels.
    pub tau: M,
    /// `epsilon': I1 -> J1`.
    pub epsilon_prime: M,
    /// `j: J1 -> ker(psi1')`.
    pub j: M,
    /// `pi1: P -> A2`, the kernel of `f3'∘phi2`.
    pub p_kernel: Kernel<O, M>,
    pub theta1: M,
    pub theta2: M,
    pub k2_prime: M,
    /// `p: P -> J1`.
    pub p: M,
    /// `delta': K3 -> ker(psi1')`, a deflation.
    pub delta_prime: M,
    /// `ker(delta') -> K3`.
    pub ker_delta_prime: Kernel<O, M>,
    /// `K2 -> ker(delta')`, the deflation part of `psi2`.
    pub psi2_deflation: M,
}

/// The six-term sequence `K1 -> K2 -> K3 -> C1 -> C2 -> C3`.
#[derive(Clone, Debug)]
pub struct SnakeResult<O, M> {
    pub kernels: [Kernel<O, M>; 3],
    pub cokernels: [Cokernel<O, M>; 3],
    pub psi1: M,
    pub psi2: M,
    pub delta: M,
    pub psi1_prime: M,
    pub psi2_prime: M,
    pub witnesses: SnakeWitnesses<O, M>,
    /// Factorizations of the five maps through the witness objects.
    pub factorizations: Vec<AdmissibleFactorization<O, M>>,
    pub psi1_is_inflation: bool,
    pub psi2_prime_is_deflation: bool,
    pub exactness: LongExactVerdict,
}

pub type SnakeResultOf<C> = SnakeResult<<C as Category>::Object, <C as Category>::Morphism>;

impl<O, M: Clone> SnakeResult<O, M> {
    pub fn sequence(&self) -> Vec<M> {
        vec![
            self.psi1.clone(),
            self.psi2.clone(),
            self.delta.clone(),
            self.psi1_prime.clone(),
            self.psi2_prime.clone(),
        ]
    }

    pub fn is_verified(&self) -> bool {
        self.psi1_is_inflation && self.psi2_prime_is_deflation && self.exactness.is_exact()
    }
}

/// Runs `step`, turning instance precondition failures into conclusion
/// failures labelled with the step.
fn step<T>(name: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| e.at_step(name))
}

fn require_ses<C: Category>(cat: &C, i: &C::Morphism, p: &C::Morphism, what: &str) -> Result<()> {
    cat.require_short_exact(i, p, what, false)
}

/// The snake lemma: from the diagram, the connecting morphism
/// `delta = i'∘delta'` and the exact sequence
/// `K1 -> K2 -> K3 -> C1 -> C2 -> C3`.
pub fn snake<C: Category>(cat: &C, d: &SnakeDiagramOf<C>) -> Result<SnakeResultOf<C>> {
    d.validate(cat)?;
    let [f1, f2, f3] = &d.f;
    let (k1, k2, k3) = (&f1.kernel, &f2.kernel, &f3.kernel);
    let (c1, c2, c3) = (&f1.cokernel, &f2.cokernel, &f3.cokernel);

    let psi1 = step("psi1", cat.kernel_lift(&f2.deflation_part, &k2.inclusion, &cat.compose(&d.phi1, &k1.inclusion)?))?;
    let psi2 = step("psi2", cat.kernel_lift(&f3.deflation_part, &k3.inclusion, &cat.compose(&d.phi2, &k2.inclusion)?))?;
    let psi1_prime = step(
        "psi1'",
        cat.cokernel_colift(&f1.inflation_part, &c1.projection, &cat.compose(&c2.projection, &d.phi1_prime)?),
    )?;
    let psi2_prime = step(
        "psi2'",
        cat.cokernel_colift(&f2.inflation_part, &c2.projection, &cat.compose(&c3.projection, &d.phi2_prime)?),
    )?;
    cat.require_deflation(&psi2_prime, "psi2'")?;

    // phi2'': I2 -> I3 from the cokernel property of f2'.
    let f3p_phi2 = cat.compose(&f3.deflation_part, &d.phi2)?;
    let phi2_pp = step("phi2''", cat.cokernel_colift(&k2.inclusion, &f2.deflation_part, &f3p_phi2))?;
    cat.require_equal(
        &cat.compose(&f3.inflation_part, &phi2_pp)?,
        &cat.compose(&d.phi2_prime, &f2.inflation_part)?,
        "f3''∘phi2'' = phi2'∘f2''",
    )?;
    let j1 = cat.deflation_kernel(&phi2_pp, "phi2''")?;

    // First 3x3 diagram: J1 -> B1 -> ker(psi2').
    let ker_psi2_prime = step("ker(psi2')", cat.kernel(&psi2_prime))?;
    let i = &ker_psi2_prime.inclusion;
    let epsilon = step(
        "epsilon",
        cat.kernel_lift(&d.phi2_prime, &d.phi1_prime, &cat.compose(&f2.inflation_part, &j1.inclusion)?),
    )?;
    let c2_phi1p = cat.compose(&c2.projection, &d.phi1_prime)?;
    let c2_prime = step("c2'", cat.kernel_lift(&psi2_prime, i, &c2_phi1p))?;
    require_ses(cat, &epsilon, &c2_prime, "J1 -> B1 -> ker(psi2')")?;

    let alpha = step("alpha", cat.kernel_lift(&psi2_prime, i, &psi1_prime))?;
    cat.require_equal(&cat.compose(&alpha, &c1.projection)?, &c2_prime, "alpha∘c1 = c2'")?;
    let ker_psi1_prime = cat.deflation_kernel(&alpha, "alpha")?;
    let i_prime = &ker_psi1_prime.inclusion;

    // Second 3x3 diagram: I1 -> T -> ker(psi1'), with T identified with J1.
    let t = cat.deflation_kernel(&c2_prime, "c2'")?;
    let eps_t_prime = step("epsilon' (into T)", cat.kernel_lift(&c2_prime, &t.inclusion, &f1.inflation_part))?;
    let j_t = step(
        "j (from T)",
        cat.kernel_lift(&alpha, i_prime, &cat.compose(&c1.projection, &t.inclusion)?),
    )?;
    require_ses(cat, &eps_t_prime, &j_t, "I1 -> T -> ker(psi1')")?;
    let (tau, tau_inv) = step("J1 ≅ T", cat.compare_kernels(&c2_prime, &epsilon, &t.inclusion))?;
    let epsilon_prime = cat.compose(&tau_inv, &eps_t_prime)?;
    let j = cat.compose(&j_t, &tau)?;
    require_ses(cat, &epsilon_prime, &j, "I1 -> J1 -> ker(psi1')")?;

    // P = ker(f3'∘phi2) and its two kernel diagrams.
    let p_kernel = cat.deflation_kernel(&f3p_phi2, "f3'∘phi2")?;
    let pi1 = &p_kernel.inclusion;
    let theta1 = step("theta1", cat.kernel_lift(&f3p_phi2, pi1, &d.phi1))?;
    let theta2 = step("theta2", cat.kernel_lift(&f3.deflation_part, &k3.inclusion, &cat.compose(&d.phi2, pi1)?))?;
    require_ses(cat, &theta1, &theta2, "A1 -> P -> K3")?;
    let k2_prime = step("k2'", cat.kernel_lift(&f3p_phi2, pi1, &k2.inclusion))?;
    let p = step("p", cat.kernel_lift(&phi2_pp, &j1.inclusion, &cat.compose(&f2.deflation_part, pi1)?))?;
    require_ses(cat, &k2_prime, &p, "K2 -> P -> J1")?;
    cat.require_equal(
        &cat.compose(&p, &theta1)?,
        &cat.compose(&epsilon_prime, &f1.deflation_part)?,
        "p∘theta1 = epsilon'∘f1'",
    )?;

    let delta_prime = step("delta'", cat.cokernel_colift(&theta1, &theta2, &cat.compose(&j, &p)?))?;
    cat.require_deflation(&delta_prime, "delta'")?;
    let delta = cat.compose(i_prime, &delta_prime)?;

    // Last 3x3 diagram: K1 -> K2 -> ker(delta').
    let ker_delta_prime = cat.deflation_kernel(&delta_prime, "delta'")?;
    let psi2_deflation = step(
        "K2 -> ker(delta')",
        cat.kernel_lift(&delta_prime, &ker_delta_prime.inclusion, &cat.compose(&theta2, &k2_prime)?),
    )?;
    cat.require_equal(
        &cat.compose(&ker_delta_prime.inclusion, &psi2_deflation)?,
        &psi2,
        "psi2 = (ker delta' -> K3)∘(K2 -> ker delta')",
    )?;
    cat.require_equal(&cat.compose(&k2_prime, &psi1)?, &cat.compose(&theta1, &k1.inclusion)?, "k2'∘psi1 = theta1∘k1")?;

    let c3_obj = cat.target(&psi2_prime);
    let id_c3 = cat.identity(&c3_obj);
    let k1_obj = cat.source(&psi1);
    let id_k1 = cat.identity(&k1_obj);
    let factorizations = vec![
        AdmissibleFactorization {
            morphism: psi1.clone(),
            deflation_part: id_k1.clone(),
            inflation_part: psi1.clone(),
            image: k1_obj,
            kernel: step("ker(id K1)", cat.kernel(&id_k1))?,
            cokernel: Cokernel { object: ker_delta_prime.object.clone(), projection: psi2_deflation.clone() },
        },
        AdmissibleFactorization {
            morphism: psi2.clone(),
            deflation_part: psi2_deflation.clone(),
            inflation_part: ker_delta_prime.inclusion.clone(),
            image: ker_delta_prime.object.clone(),
            kernel: Kernel { object: cat.source(&psi1), inclusion: psi1.clone() },
            cokernel: Cokernel { object: ker_psi1_prime.object.clone(), projection: delta_prime.clone() },
        },
        AdmissibleFactorization {
            morphism: delta.clone(),
            deflation_part: delta_prime.clone(),
            inflation_part: i_prime.clone(),
            image: ker_psi1_prime.object.clone(),
            kernel: ker_delta_prime.clone(),
            cokernel: Cokernel { object: ker_psi2_prime.object.clone(), projection: alpha.clone() },
        },
        AdmissibleFactorization {
            morphism: psi1_prime.clone(),
            deflation_part: alpha.clone(),
            inflation_part: i.clone(),
            image: ker_psi2_prime.object.clone(),
            kernel: ker_psi1_prime.clone(),
            cokernel: Cokernel { object: c3_obj.clone(), projection: psi2_prime.clone() },
        },
        AdmissibleFactorization {
            morphism: psi2_prime.clone(),
            deflation_part: psi2_prime.clone(),
            inflation_part: id_c3.clone(),
            image: c3_obj,
            kernel: ker_psi2_prime.clone(),
            cokernel: step("coker(id C3)", cat.cokernel(&id_c3))?,
        },
    ];
    let seq = [psi1.clone(), psi2.clone(), delta.clone(), psi1_prime.clone(), psi2_prime.clone()];
    let exactness = check_long_exact(cat, &seq, &factorizations)?;
    let psi1_is_inflation = cat.check_short_exact(&psi1, &psi2_deflation)?.is_exact();
    let psi2_prime_is_deflation = cat.is_deflation(&psi2_prime);

    Ok(SnakeResult {
        kernels: [k1.clone(), k2.clone(), k3.clone()],
        cokernels: [c1.clone(), c2.clone(), c3.clone()],
        psi1,
        psi2,
        delta,
        psi1_prime,
        psi2_prime,
        witnesses: SnakeWitnesses {
            phi2_pp,
            j1,
            epsilon,
            ker_psi2_prime,
            c2_prime,
            alpha,
            ker_psi1_prime,
            t,
            tau,
            epsilon_prime,
            j,
            p_kernel,
            theta1,
            theta2,
            k2_prime,
            p,
            delta_prime,
            ker_delta_prime,
            psi2_deflation,
        },
        factorizations,
        psi1_is_inflation,
        psi2_prime_is_deflation,
        exactness,
    })
}

/// The maps induced on `ker f3` and `coker f1` by a morphism of snake
/// diagrams, and whether the connecting morphisms commute with them.
#[derive(Clone, Debug)]
pub struct NaturalityReport<M> {
    pub kernel_map: M,
    pub cokernel_map: M,
    pub commutes: bool,
}

/// Checks `delta_hat∘(K3 -> K3^) = (C1 -> C1^)∘delta` for a morphism of
/// snake diagrams given by `a: A_i -> A_i^` and `b: B_i -> B_i^`.
pub fn snake_naturality<C: Category>(
    cat: &C,
    d: &SnakeDiagramOf<C>,
    d_hat: &SnakeDiagramOf<C>,
    a: &[C::Morphism; 3],
    b: &[C::Morphism; 3],
) -> Result<NaturalityReport<C::Morphism>> {
    let squares = [
        (&a[1], &d.phi1, &d_hat.phi1, &a[0], "a2∘phi1 = phi1^∘a1"),
        (&a[2], &d.phi2, &d_hat.phi2, &a[1], "a3∘phi2 = phi2^∘a2"),
        (&b[1], &d.phi1_prime, &d_hat.phi1_prime, &b[0], "b2∘phi1' = phi1'^∘b1"),
        (&b[2], &d.phi2_prime, &d_hat.phi2_prime, &b[1], "b3∘phi2' = phi2'^∘b2"),
    ];
    for (x, f, g, y, what) in squares {
        if !cat.equal(&cat.compose(x, f)?, &cat.compose(g, y)?) {
            return Err(Error::Hypothesis(format!("{what} does not commute")));
        }
    }
    for n in 0..3 {
        let lhs = cat.compose(&d_hat.f[n].morphism, &a[n])?;
        let rhs = cat.compose(&b[n], &d.f[n].morphism)?;
        if !cat.equal(&lhs, &rhs) {
            return Err(Error::Hypothesis(format!("vertical square {} does not commute", n + 1)));
        }
    }
    let s = snake(cat, d)?;
    let s_hat = snake(cat, d_hat)?;
    let kernel_map = step(
        "K3 -> K3^",
        cat.kernel_lift(
            &d_hat.f[2].deflation_part,
            &d_hat.f[2].kernel.inclusion,
            &cat.compose(&a[2], &d.f[2].kernel.inclusion)?,
        ),
    )?;
    let cokernel_map = step(
        "C1 -> C1^",
        cat.cokernel_colift(
            &d.f[0].inflation_part,
            &d.f[0].cokernel.projection,
            &cat.compose(&d_hat.f[0].cokernel.projection, &b[0])?,
        ),
    )?;
    let commutes = cat.equal(&cat.compose(&s_hat.delta, &kernel_map)?, &cat.compose(&cokernel_map, &s.delta)?);
    Ok(NaturalityReport { kernel_map, cokernel_map, commutes })
}

/// Witnesses that `f` is an inflation, given that `g` and `g∘f` are.
#[derive(Clone, Debug)]
pub struct InflationCancellation<O, M> {
    /// `p': D' -> D` with `p'∘q = p`, a deflation.
    pub p_prime: M,
    /// `ker(p') -> D'`.
    pub kernel: Kernel<O, M>,
    /// `B -> ker(p')`, a cokernel of `f`.
    pub cokernel_of_f: M,
    /// Whether `(f, cokernel_of_f)` is short exact.
    pub verified: bool,
}

pub type InflationCancellationOf<C> = InflationCancellation<<C as Category>::Object, <C as Category>::Morphism>;

/// If `g: B -> C` and `g∘f` are inflations, with short exact sequences
/// `B -g-> C -p-> D` and `A -gf-> C -q-> D'`, then `f` is an inflation with
/// cokernel `B -> ker(p')` where `p': D' -> D` is induced by `p`.
pub fn inflation_cancellation<C: Category>(
    cat: &C,
    f: &C::Morphism,
    g: &C::Morphism,
    p: &C::Morphism,
    q: &C::Morphism,
) -> Result<InflationCancellationOf<C>> {
    let gf = cat.compose(g, f)?;
    cat.require_short_exact(g, p, "B -> C -> D", true)?;
    cat.require_short_exact(&gf, q, "A -> C -> D'", true)?;
    let p_prime = step("p'", cat.cokernel_colift(&gf, q, p))?;
    cat.require_deflation(&p_prime, "p'")?;
    let kernel = cat.deflation_kernel(&p_prime, "p'")?;
    let cokernel_of_f = step("B -> ker(p')", cat.kernel_lift(&p_prime, &kernel.inclusion, &cat.compose(q, g)?))?;
    let verified = cat.check_short_exact(f, &cokernel_of_f)?.is_exact();
    Ok(InflationCancellation { p_prime, kernel, cokernel_of_f, verified })
}

/// [`inflation_cancellation`] with the cokernels of `g` and `g∘f` taken from
/// the instance.
pub fn inflation_cancellation_auto<C: Category>(
    cat: &C,
    f: &C::Morphism,
    g: &C::Morphism,
) -> Result<InflationCancellationOf<C>> {
    let p = cat.cokernel(g).map_err(|e| Error::Hypothesis(format!("g has no cokernel: {}", strip(&e))))?;
    let gf = cat.compose(g, f)?;
    let q = cat.cokernel(&gf).map_err(|e| Error::Hypothesis(format!("g∘f has no cokernel: {}", strip(&e))))?;
    inflation_cancellation(cat, f, g, &p.projection, &q.projection)
}

/// Snake lemma with the top row extended by a deflation `a: A1' -> A1` and
/// the bottom row by an inflation `b: B3 -> B3'`.
#[derive(Clone, Debug)]
pub struct ExtendedSnake<O, M> {
    pub base: SnakeResult<O, M>,
    /// Factorization of `f1∘a`; its kernel is `K1'`.
    pub f1a: AdmissibleFactorization<O, M>,
    /// Factorization of `b∘f3`; its cokernel is `C3'`.
    pub bf3: AdmissibleFactorization<O, M>,
    /// `K1' -> K1`, a deflation.
    pub kernel_map: M,
    /// `C3 -> C3'`, an inflation.
    pub cokernel_map: M,
    /// The cancellation data showing `C3 -> C3'` is an inflation.
    pub cancellation: InflationCancellation<O, M>,
    /// `K1' -> K2 -> K3 -> C1 -> C2 -> C3'`.
    pub sequence: Vec<M>,
    pub factorizations: Vec<AdmissibleFactorization<O, M>>,
    pub kernel_map_is_deflation: bool,
    pub cokernel_map_is_inflation: bool,
    pub exactness: LongExactVerdict,
}

pub type ExtendedSnakeOf<C> = ExtendedSnake<<C as Category>::Object, <C as Category>::Morphism>;

impl<O, M> ExtendedSnake<O, M> {
    pub fn is_verified(&self) -> bool {
        self.kernel_map_is_deflation && self.cokernel_map_is_inflation && self.exactness.is_exact()
    }
}

pub fn snake_extended<C: Category>(
    cat: &C,
    d: &SnakeDiagramOf<C>,
    a: &C::Morphism,
    b: &C::Morphism,
) -> Result<ExtendedSnakeOf<C>> {
    let f1a = cat.compose(&d.f[0].morphism, a)?;
    let bf3 = cat.compose(b, &d.f[2].morphism)?;
    let fac = |m: &C::Morphism, what: &str| -> Result<FactorizationOf<C>> {
        cat.admissible_factorization(m)?
            .ok_or_else(|| Error::Hypothesis(format!("{what} is not admissible")))
    };
    let f1a = fac(&f1a, "f1∘a")?;
    let bf3 = fac(&bf3, "b∘f3")?;
    snake_extended_with(cat, d, a, b, f1a, bf3)
}

/// [`snake_extended`] with given factorizations of `f1∘a` and `b∘f3`.
pub fn snake_extended_with<C: Category>(
    cat: &C,
    d: &SnakeDiagramOf<C>,
    a: &C::Morphism,
    b: &C::Morphism,
    f1a: FactorizationOf<C>,
    bf3: FactorizationOf<C>,
) -> Result<ExtendedSnakeOf<C>> {
    if !cat.is_deflation(a) {
        return Err(Error::Hypothesis("a is not a deflation".into()));
    }
    let b_cokernel = cat
        .cokernel(b)
        .map_err(|e| Error::Hypothesis(format!("b has no cokernel: {}", strip(&e))))?;
    cat.require_short_exact(b, &b_cokernel.projection, "b and its cokernel", true)?;
    if !cat.equal(&f1a.morphism, &cat.compose(&d.f[0].morphism, a)?) {
        return Err(Error::Hypothesis("factorization of f1∘a does not match".into()));
    }
    if !cat.equal(&bf3.morphism, &cat.compose(b, &d.f[2].morphism)?) {
        return Err(Error::Hypothesis("factorization of b∘f3 does not match".into()));
    }
    f1a.validate(cat)?;
    bf3.validate(cat)?;
    let base = snake(cat, d)?;
    let [f1, _, f3] = &d.f;

    // K1' -> K1, and the 3x3 diagram showing it is a deflation.
    let k1p = &f1a.kernel;
    let kernel_map = step(
        "K1' -> K1",
        cat.kernel_lift(&f1.deflation_part, &f1.kernel.inclusion, &cat.compose(a, &k1p.inclusion)?),
    )?;
    let a_kernel = cat.deflation_kernel(a, "a")?;
    let n = step("ker(a) -> K1'", cat.kernel_lift(&f1a.deflation_part, &k1p.inclusion, &a_kernel.inclusion))?;
    let kernel_map_is_deflation = cat.check_short_exact(&n, &kernel_map)?.is_exact();

    // C3 -> C3'.
    let c3 = &f3.cokernel;
    let c3p = &bf3.cokernel;
    let cokernel_map = step(
        "C3 -> C3'",
        cat.cokernel_colift(&f3.inflation_part, &c3.projection, &cat.compose(&c3p.projection, b)?),
    )?;
    // I3 -> I3' is a deflation and a monomorphism, hence an isomorphism, so
    // b∘f3'' is an inflation with cokernel c3'.
    let u = step("I3 -> I3'", cat.cokernel_colift(&f3.kernel.inclusion, &f3.deflation_part, &bf3.deflation_part))?;
    cat.require_deflation(&u, "I3 -> I3'")?;
    if !cat.is_iso(&u) {
        return Err(Error::Conclusion("I3 -> I3' is not an isomorphism".into()));
    }
    let cancellation = inflation_cancellation(cat, &f3.inflation_part, b, &b_cokernel.projection, &c3p.projection)
        .map_err(|e| match e {
            Error::Hypothesis(m) => Error::Conclusion(format!("inflation cancellation for b∘f3'': {m}")),
            other => other,
        })?;
    if !cancellation.verified {
        return Err(Error::Conclusion("f3'' is not recovered as an inflation with cokernel ker(p')".into()));
    }
    let (v, _) = step(
        "C3 ≅ ker(p')",
        cat.compare_cokernels(&f3.inflation_part, &c3.projection, &cancellation.cokernel_of_f),
    )?;
    let via_cancellation = cat.compose(&cancellation.kernel.inclusion, &v)?;
    cat.require_equal(&via_cancellation, &cokernel_map, "C3 -> ker(p') -> C3' = C3 -> C3'")?;
    let cokernel_map_is_inflation = cat.check_short_exact(&cokernel_map, &cancellation.p_prime)?.is_exact();

    let first = cat.compose(&base.psi1, &kernel_map)?;
    let last = cat.compose(&cokernel_map, &base.psi2_prime)?;
    let mut factorizations = base.factorizations.clone();
    factorizations[0] = AdmissibleFactorization {
        morphism: first.clone(),
        deflation_part: kernel_map.clone(),
        inflation_part: base.psi1.clone(),
        image: cat.source(&base.psi1),
        kernel: Kernel { object: a_kernel.object.clone(), inclusion: n },
        cokernel: base.factorizations[0].cokernel.clone(),
    };
    factorizations[4] = AdmissibleFactorization {
        morphism: last.clone(),
        deflation_part: base.psi2_prime.clone(),
        inflation_part: cokernel_map.clone(),
        image: cat.target(&base.psi2_prime),
        kernel: base.factorizations[4].kernel.clone(),
        cokernel: Cokernel { object: cat.target(&cancellation.p_prime), projection: cancellation.p_prime.clone() },
    };
    let sequence = vec![first, base.psi2.clone(), base.delta.clone(), base.psi1_prime.clone(), last];
    let exactness = check_long_exact(cat, &sequence, &factorizations)?;
    Ok(ExtendedSnake {
        base,
        f1a,
        bf3,
        kernel_map,
        cokernel_map,
        cancellation,
        sequence,
        factorizations,
        kernel_map_is_deflation,
        cokernel_map_is_inflation,
        exactness,
    })
}

/// Convenience accessors for kernel and cokernel objects of the verticals.
pub fn kernel_objects<C: Category>(d: &SnakeDiagramOf<C>) -> [C::Object; 3] {
    [d.f[0].kernel.object.clone(), d.f[1].kernel.object.clone(), d.f[2].kernel.object.clone()]
}

pub fn cokernel_objects<C: Category>(d: &SnakeDiagramOf<C>) -> [C::Object; 3] {
    [d.f[0].cokernel.object.clone(), d.f[1].cokernel.object.clone(), d.f[2].cokernel.object.clone()]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgab::{AbMorphism, Fgab, FpAbelianGroup};
    use crate::matrix::IntMatrix;

    fn z(n: usize) -> FpAbelianGroup {
        FpAbelianGroup::free(n)
    }

    fn m(src: &FpAbelianGroup, tgt: &FpAbelianGroup, data: &[i64]) -> AbMorphism {
        Fgab.morphism(src, tgt, data).unwrap()
    }

    fn split_rows() -> ((AbMorphism, AbMorphism), (AbMorphism, AbMorphism)) {
        let incl = m(&z(1), &z(2), &[1, 0]);
        let proj = m(&z(2), &z(1), &[0, 1]);
        ((incl.clone(), proj.clone()), (incl, proj))
    }

    fn diagram(f1: &[i64], f2: &[i64], f3: &[i64]) -> SnakeDiagramOf<Fgab> {
        let (top, bottom) = split_rows();
        let verticals = [m(&z(1), &z(1), f1), m(&z(2), &z(2), f2), m(&z(1), &z(1), f3)];
        SnakeDiagram::new(&Fgab, top, bottom, verticals).unwrap()
    }

    #[test]
    fn diagonal_verticals_give_zero_delta() {
        let cat = Fgab;
        let s = snake(&cat, &diagram(&[2], &[2, 0, 0, 3], &[3])).unwrap();
        assert!(s.is_verified());
        for k in &s.kernels {
            assert!(k.object.is_trivial());
        }
        let names: Vec<String> = s.cokernels.iter().map(|c| c.object.to_string()).collect();
        assert_eq!(names, ["Z/2", "Z/6", "Z/3"]);
        assert!(cat.is_zero(&s.delta));
    }

    #[test]
    fn reduction_mod_two_as_delta() {
        let cat = Fgab;
        let s = snake(&cat, &diagram(&[2], &[2, 1, 0, 0], &[0])).unwrap();
        assert!(s.is_verified());
        assert_eq!(s.kernels[2].object.to_string(), "Z");
        assert_eq!(s.cokernels[0].object.to_string(), "Z/2");
        assert_eq!(s.delta.matrix(), &IntMatrix::from_i64(1, 1, &[1]));
        assert!(cat.is_deflation(&s.delta));
        assert_eq!(s.cokernels[1].object.to_string(), "Z");
        assert!(cat.is_iso(&s.psi2_prime));
        let psi2 = s.psi2.matrix().get(0, 0).clone();
        assert_eq!(psi2.magnitude(), &num_bigint::BigUint::from(2u32));
    }

    #[test]
    fn identity_verticals_give_zero_objects() {
        let cat = Fgab;
        let s = snake(&cat, &diagram(&[1], &[1, 0, 0, 1], &[1])).unwrap();
        assert!(s.is_verified());
        for k in &s.kernels {
            assert!(cat.is_zero_object(&k.object));
        }
        for c in &s.cokernels {
            assert!(cat.is_zero_object(&c.object));
        }
        for f in s.sequence() {
            assert!(cat.is_zero(&f));
        }
    }

    #[test]
    fn non_commuting_square_is_a_hypothesis_error() {
        let err = snake(&Fgab, &diagram(&[2], &[3, 0, 0, 3], &[3])).unwrap_err();
        assert!(matches!(err, Error::Hypothesis(ref msg) if msg.contains("left square")));
    }

    #[test]
    fn cancellation_of_times_two_through_times_three() {
        let cat = Fgab;
        let f = m(&z(1), &z(1), &[2]);
        let g = m(&z(1), &z(1), &[3]);
        let r = inflation_cancellation_auto(&cat, &f, &g).unwrap();
        assert!(r.verified);
        assert_eq!(cat.source(&r.p_prime).to_string(), "Z/6");
        assert_eq!(cat.target(&r.p_prime).to_string(), "Z/3");
        assert_eq!(r.kernel.object.to_string(), "Z/2");
        let id = cat.identity(&z(1));
        let r = inflation_cancellation_auto(&cat, &id, &g).unwrap();
        assert!(cat.is_iso(&r.p_prime));
        assert!(r.kernel.object.is_trivial());
    }

    #[test]
    fn extension_by_identities_matches_snake() {
        let cat = Fgab;
        let d = diagram(&[2], &[2, 1, 0, 0], &[0]);
        let e = snake_extended(&cat, &d, &cat.identity(&z(1)), &cat.identity(&z(1))).unwrap();
        assert!(e.is_verified());
        let s = snake(&cat, &d).unwrap();
        for (x, y) in e.sequence.iter().zip(s.sequence()) {
            assert!(cat.equal(x, &y));
        }
    }

    #[test]
    fn extension_by_times_five() {
        let cat = Fgab;
        let d = diagram(&[2], &[2, 1, 0, 0], &[0]);
        let b = m(&z(1), &z(1), &[5]);
        let e = snake_extended(&cat, &d, &cat.identity(&z(1)), &b).unwrap();
        assert!(e.is_verified());
        assert_eq!(e.bf3.cokernel.object.to_string(), "Z");
        assert_eq!(e.cokernel_map.matrix(), &IntMatrix::from_i64(1, 1, &[5]));
    }

    #[test]
    fn extension_requires_a_deflation() {
        let cat = Fgab;
        let d = diagram(&[2], &[2, 1, 0, 0], &[0]);
        let a = m(&z(1), &z(1), &[3]);
        let f1a = cat.compose(&d.f[0].morphism, &a).unwrap();
        assert!(cat.kernel(&f1a).unwrap().object.is_trivial());
        let err = snake_extended(&cat, &d, &a, &cat.identity(&z(1))).unwrap_err();
        assert!(err.is_hypothesis());
        let a = m(&z(2), &z(1), &[1, 0]);
        let e = snake_extended(&cat, &d, &a, &cat.identity(&z(1))).unwrap();
        assert!(e.is_verified());
        assert_eq!(e.f1a.kernel.object.to_string(), "Z");
    }
}
