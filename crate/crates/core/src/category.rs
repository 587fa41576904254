//! The weakly exact category interface.
//!
//! An instance supplies composition, a zero object, a class of deflations
//! and the kernels/cokernels that class requires, together with the
//! universal-property lifts. Everything in [`crate::engine`],
//! [`crate::axioms`] and [`crate::chain`] is written against this trait
//! only.

use std::fmt::Debug;

use crate::error::{Error, Result};

/// A kernel: an object together with its inclusion morphism.
#[derive(Clone, Debug, PartialEq)]
pub struct Kernel<O, M> {
    pub object: O,
    pub inclusion: M,
}

/// A cokernel: an object together with its projection morphism.
#[derive(Clone, Debug, PartialEq)]
pub struct Cokernel<O, M> {
    pub object: O,
    pub projection: M,
}

/// A pullback square of a deflation `p: B -> D` along `f: A -> D`.
///
/// `pulled_back: P -> A` is the base change of `p`, `lifted: P -> B` the
/// base change of `f`.
#[derive(Clone, Debug, PartialEq)]
pub struct Pullback<O, M> {
    pub apex: O,
    pub lifted: M,
    pub pulled_back: M,
}

/// `f = inflation_part ∘ deflation_part`, through the image object, with the
/// kernel of the deflation part and the cokernel of the inflation part.
#[derive(Clone, Debug, PartialEq)]
pub struct AdmissibleFactorization<O, M> {
    pub morphism: M,
    pub deflation_part: M,
    pub inflation_part: M,
    pub image: O,
    pub kernel: Kernel<O, M>,
    pub cokernel: Cokernel<O, M>,
}

pub type KernelOf<C> = Kernel<<C as Category>::Object, <C as Category>::Morphism>;
pub type CokernelOf<C> = Cokernel<<C as Category>::Object, <C as Category>::Morphism>;
pub type PullbackOf<C> = Pullback<<C as Category>::Object, <C as Category>::Morphism>;
pub type FactorizationOf<C> =
    AdmissibleFactorization<<C as Category>::Object, <C as Category>::Morphism>;

/// Capability record of a weakly exact category instance.
///
/// Object equality is presentation equality. Morphism equality is the
/// instance's [`Category::equal`], which must be a congruence for
/// composition. All operations are pure.
pub trait Category {
    type Object: Clone + PartialEq + Debug;
    type Morphism: Clone + Debug;

    fn zero_object(&self) -> Self::Object;
    fn source(&self, f: &Self::Morphism) -> Self::Object;
    fn target(&self, f: &Self::Morphism) -> Self::Object;
    fn identity(&self, a: &Self::Object) -> Self::Morphism;
    /// `g ∘ f`; fails unless `target(f) = source(g)`.
    fn compose(&self, g: &Self::Morphism, f: &Self::Morphism) -> Result<Self::Morphism>;
    fn equal(&self, f: &Self::Morphism, g: &Self::Morphism) -> bool;
    fn to_zero(&self, a: &Self::Object) -> Self::Morphism;
    #[allow(clippy::wrong_self_convention)]
    fn from_zero(&self, b: &Self::Object) -> Self::Morphism;

    /// The composite `A -> 0 -> B`.
    fn zero_morphism(&self, a: &Self::Object, b: &Self::Object) -> Self::Morphism {
        self.compose(&self.from_zero(b), &self.to_zero(a))
            .expect("A -> 0 -> B is always composable")
    }

    fn is_deflation(&self, f: &Self::Morphism) -> bool;
    /// Kernel of `p`. Required for deflations.
    fn kernel(&self, p: &Self::Morphism) -> Result<KernelOf<Self>>;
    /// Cokernel of `i`. Required for inflations.
    fn cokernel(&self, i: &Self::Morphism) -> Result<CokernelOf<Self>>;

    /// Given a kernel `k` of `p` and `g` with `p∘g = 0`, the unique `u` with
    /// `k∘u = g`.
    fn kernel_lift(
        &self,
        p: &Self::Morphism,
        k: &Self::Morphism,
        g: &Self::Morphism,
    ) -> Result<Self::Morphism>;

    /// Given a cokernel `c` of `i` and `g` with `g∘i = 0`, the unique `v`
    /// with `v∘c = g`.
    fn cokernel_colift(
        &self,
        i: &Self::Morphism,
        c: &Self::Morphism,
        g: &Self::Morphism,
    ) -> Result<Self::Morphism>;

    /// Two-sided inverse of `f`, if `f` is an isomorphism.
    fn inverse(&self, f: &Self::Morphism) -> Option<Self::Morphism>;

    fn pullback_of_deflation(
        &self,
        _p: &Self::Morphism,
        _f: &Self::Morphism,
    ) -> Result<PullbackOf<Self>> {
        Err(Error::Unsupported("pullbacks"))
    }

    /// The unique `X -> P` with `lifted∘u = x` and `pulled_back∘u = y`.
    fn pullback_lift(
        &self,
        _p: &Self::Morphism,
        _f: &Self::Morphism,
        _pb: &PullbackOf<Self>,
        _x: &Self::Morphism,
        _y: &Self::Morphism,
    ) -> Result<Self::Morphism> {
        Err(Error::Unsupported("pullbacks"))
    }

    /// `Ok(None)` means the morphism is not admissible.
    fn admissible_factorization(&self, _f: &Self::Morphism) -> Result<Option<FactorizationOf<Self>>> {
        Err(Error::Unsupported("admissible factorization"))
    }

    /// All objects up to the given size, in a deterministic order.
    fn enumerate_objects(&self, _max_size: usize) -> Option<Vec<Self::Object>> {
        None
    }

    /// All morphisms `a -> b`, in a deterministic order.
    fn enumerate_morphisms(&self, _a: &Self::Object, _b: &Self::Object) -> Option<Vec<Self::Morphism>> {
        None
    }
}

/// Which clauses of short exactness hold for a pair `(i, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShortExactReport {
    pub composite_zero: bool,
    pub deflation: bool,
    pub kernel: bool,
    pub cokernel: bool,
}

impl ShortExactReport {
    pub fn is_exact(&self) -> bool {
        self.composite_zero && self.deflation && self.kernel && self.cokernel
    }

    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.composite_zero {
            out.push("p∘i is not zero");
        }
        if !self.deflation {
            out.push("p not a deflation");
        }
        if !self.kernel {
            out.push("i not kernel of p");
        }
        if !self.cokernel {
            out.push("p not cokernel of i");
        }
        out
    }
}

/// Derived operations available on every instance.
pub trait CategoryExt: Category {
    fn is_zero(&self, f: &Self::Morphism) -> bool {
        let z = self.zero_morphism(&self.source(f), &self.target(f));
        self.equal(f, &z)
    }

    /// `a` is a zero object iff its identity is the zero endomorphism.
    fn is_zero_object(&self, a: &Self::Object) -> bool {
        self.is_zero(&self.identity(a))
    }

    fn compose_all(&self, chain: &[&Self::Morphism]) -> Result<Self::Morphism> {
        // chain is written left to right as a composite: [h, g, f] = h∘g∘f
        let (last, rest) = chain.split_last().expect("empty composite");
        let mut acc = (*last).clone();
        for m in rest.iter().rev() {
            acc = self.compose(m, &acc)?;
        }
        Ok(acc)
    }

    /// Checks `f∘g = id` and `g∘f = id`.
    fn are_inverse(&self, f: &Self::Morphism, g: &Self::Morphism) -> bool {
        let (Ok(fg), Ok(gf)) = (self.compose(f, g), self.compose(g, f)) else {
            return false;
        };
        self.equal(&fg, &self.identity(&self.source(g)))
            && self.equal(&gf, &self.identity(&self.target(g)))
    }

    /// Returns a verified inverse, or `None`.
    fn checked_inverse(&self, f: &Self::Morphism) -> Option<Self::Morphism> {
        self.inverse(f).filter(|g| self.are_inverse(f, g))
    }

    fn is_iso(&self, f: &Self::Morphism) -> bool {
        self.checked_inverse(f).is_some()
    }

    /// Is `i` a kernel of `p`? Compares `i` with the instance kernel through
    /// the induced map and its verified inverse.
    fn is_kernel_of(&self, i: &Self::Morphism, p: &Self::Morphism) -> bool {
        let Ok(pi) = self.compose(p, i) else { return false };
        if !self.is_zero(&pi) {
            return false;
        }
        let Ok(ker) = self.kernel(p) else { return false };
        let Ok(u) = self.kernel_lift(p, &ker.inclusion, i) else { return false };
        match self.checked_inverse(&u) {
            Some(v) => self
                .compose(i, &v)
                .map(|iv| self.equal(&iv, &ker.inclusion))
                .unwrap_or(false),
            None => false,
        }
    }

    /// Is `p` a cokernel of `i`?
    fn is_cokernel_of(&self, p: &Self::Morphism, i: &Self::Morphism) -> bool {
        let Ok(pi) = self.compose(p, i) else { return false };
        if !self.is_zero(&pi) {
            return false;
        }
        let Ok(cok) = self.cokernel(i) else { return false };
        let Ok(v) = self.cokernel_colift(i, &cok.projection, p) else { return false };
        match self.checked_inverse(&v) {
            Some(w) => self
                .compose(&w, p)
                .map(|wp| self.equal(&wp, &cok.projection))
                .unwrap_or(false),
            None => false,
        }
    }

    fn is_inflation(&self, i: &Self::Morphism) -> bool {
        match self.cokernel(i) {
            Ok(c) => self.check_short_exact(i, &c.projection).is_ok_and(|r| r.is_exact()),
            Err(_) => false,
        }
    }

    /// Evaluates every clause of short exactness of `A -i-> B -p-> C`.
    fn check_short_exact(&self, i: &Self::Morphism, p: &Self::Morphism) -> Result<ShortExactReport> {
        if self.target(i) != self.source(p) {
            return Err(Error::NotComposable(format!(
                "target of i is {:?}, source of p is {:?}",
                self.target(i),
                self.source(p)
            )));
        }
        let pi = self.compose(p, i)?;
        Ok(ShortExactReport {
            composite_zero: self.is_zero(&pi),
            deflation: self.is_deflation(p),
            kernel: self.is_kernel_of(i, p),
            cokernel: self.is_cokernel_of(p, i),
        })
    }

    /// `Ok(())` if `(i, p)` is short exact, otherwise an error of the given
    /// kind naming the failing clauses.
    fn require_short_exact(
        &self,
        i: &Self::Morphism,
        p: &Self::Morphism,
        what: &str,
        as_hypothesis: bool,
    ) -> Result<()> {
        let report = self.check_short_exact(i, p)?;
        if report.is_exact() {
            return Ok(());
        }
        let msg = format!("{what} is not short exact ({})", report.failures().join(", "));
        Err(if as_hypothesis { Error::Hypothesis(msg) } else { Error::Conclusion(msg) })
    }

    fn require_equal(&self, f: &Self::Morphism, g: &Self::Morphism, what: &str) -> Result<()> {
        if self.equal(f, g) {
            Ok(())
        } else {
            Err(Error::Conclusion(format!("{what} does not hold")))
        }
    }

    fn require_deflation(&self, f: &Self::Morphism, what: &str) -> Result<()> {
        if self.is_deflation(f) {
            Ok(())
        } else {
            Err(Error::Conclusion(format!("{what} is not a deflation")))
        }
    }

    /// A kernel of `p`, insisting that `p` is a deflation first.
    fn deflation_kernel(&self, p: &Self::Morphism, what: &str) -> Result<KernelOf<Self>> {
        self.require_deflation(p, what)?;
        self.kernel(p).map_err(|e| e.at_step(what))
    }

    /// Isomorphism between two kernels `k1`, `k2` of the same `p`: the unique
    /// `u` with `k2∘u = k1`, verified invertible.
    fn compare_kernels(
        &self,
        p: &Self::Morphism,
        k1: &Self::Morphism,
        k2: &Self::Morphism,
    ) -> Result<(Self::Morphism, Self::Morphism)> {
        let u = self.kernel_lift(p, k2, k1)?;
        let v = self
            .checked_inverse(&u)
            .ok_or_else(|| Error::Conclusion("kernels are not isomorphic".into()))?;
        Ok((u, v))
    }

    /// Isomorphism between two cokernels `c1`, `c2` of the same `i`: the
    /// unique `v` with `v∘c1 = c2`, verified invertible.
    fn compare_cokernels(
        &self,
        i: &Self::Morphism,
        c1: &Self::Morphism,
        c2: &Self::Morphism,
    ) -> Result<(Self::Morphism, Self::Morphism)> {
        let v = self.cokernel_colift(i, c1, c2)?;
        let w = self
            .checked_inverse(&v)
            .ok_or_else(|| Error::Conclusion("cokernels are not isomorphic".into()))?;
        Ok((v, w))
    }
}

impl<C: Category + ?Sized> CategoryExt for C {}

/// A pair `(i, p)` known to be short exact.
#[derive(Clone, Debug, PartialEq)]
pub struct ShortExactSequence<M> {
    pub i: M,
    pub p: M,
}

impl<M: Clone> ShortExactSequence<M> {
    /// Builds the sequence after verifying every clause; failures are
    /// reported as hypothesis violations.
    pub fn new<C>(cat: &C, i: M, p: M) -> Result<Self>
    where
        C: Category<Morphism = M> + ?Sized,
    {
        cat.require_short_exact(&i, &p, "sequence", true)?;
        Ok(ShortExactSequence { i, p })
    }

    /// `kernel(p) -> B -> C` for a deflation `p`.
    pub fn from_deflation<C>(cat: &C, p: M) -> Result<Self>
    where
        C: Category<Morphism = M> + ?Sized,
    {
        let k = cat.deflation_kernel(&p, "p")?;
        Self::new(cat, k.inclusion, p)
    }
}

impl<O, M> AdmissibleFactorization<O, M>
where
    O: Clone + PartialEq + Debug,
    M: Clone + Debug,
{
    /// Checks every invariant: `f = f''∘f'`, `(k, f')` and `(f'', c)` short
    /// exact. Failures are hypothesis violations naming the clause.
    pub fn validate<C>(&self, cat: &C) -> Result<()>
    where
        C: Category<Object = O, Morphism = M> + ?Sized,
    {
        let composite = cat.compose(&self.inflation_part, &self.deflation_part)?;
        if !cat.equal(&composite, &self.morphism) {
            return Err(Error::Hypothesis("factorization does not compose to the morphism".into()));
        }
        cat.require_short_exact(&self.kernel.inclusion, &self.deflation_part, "kernel/deflation part", true)?;
        cat.require_short_exact(&self.inflation_part, &self.cokernel.projection, "inflation part/cokernel", true)?;
        Ok(())
    }

    /// Factorization of a deflation `p` through its own target.
    pub fn of_deflation<C>(cat: &C, p: &M) -> Result<Self>
    where
        C: Category<Object = O, Morphism = M> + ?Sized,
    {
        let kernel = cat.deflation_kernel(p, "morphism")?;
        let image = cat.target(p);
        let inflation_part = cat.identity(&image);
        let cokernel = cat.cokernel(&inflation_part)?;
        Ok(AdmissibleFactorization {
            morphism: p.clone(),
            deflation_part: p.clone(),
            inflation_part,
            image,
            kernel,
            cokernel,
        })
    }

    /// Factorization of an inflation `i` with known cokernel.
    pub fn of_inflation<C>(cat: &C, i: &M, cokernel: Cokernel<O, M>) -> Result<Self>
    where
        C: Category<Object = O, Morphism = M> + ?Sized,
    {
        let image = cat.source(i);
        let deflation_part = cat.identity(&image);
        let kernel = cat.kernel(&deflation_part)?;
        Ok(AdmissibleFactorization {
            morphism: i.clone(),
            deflation_part,
            inflation_part: i.clone(),
            image,
            kernel,
            cokernel,
        })
    }

    pub fn identity<C>(cat: &C, a: &O) -> Result<Self>
    where
        C: Category<Object = O, Morphism = M> + ?Sized,
    {
        Self::of_deflation(cat, &cat.identity(a))
    }
}
