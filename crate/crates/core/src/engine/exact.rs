//! Exactness of finite sequences.

use crate::category::{Category, CategoryExt, FactorizationOf, ShortExactReport};
use crate::error::{Error, Result};

/// Where a short exactness condition of a long sequence is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Joint {
    /// The deflation part of the first morphism sits in a short exact
    /// sequence with its kernel.
    Start,
    /// Object `k` of the sequence (`1 ≤ k < len`): the inflation part of
    /// morphism `k-1` and the deflation part of morphism `k`.
    Interior(usize),
    /// The inflation part of the last morphism sits in a short exact
    /// sequence with its cokernel.
    End,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JointReport {
    pub joint: Joint,
    pub report: ShortExactReport,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LongExactVerdict {
    pub joints: Vec<JointReport>,
}

impl LongExactVerdict {
    pub fn is_exact(&self) -> bool {
        self.joints.iter().all(|j| j.report.is_exact())
    }

    pub fn first_failure(&self) -> Option<&JointReport> {
        self.joints.iter().find(|j| !j.report.is_exact())
    }

    /// Verdict at object `k` of the sequence.
    pub fn at(&self, k: usize) -> Option<bool> {
        self.joints
            .iter()
            .find(|j| j.joint == Joint::Interior(k))
            .map(|j| j.report.is_exact())
    }
}

/// Checks exactness of `A_0 -> A_1 -> … -> A_n` given a factorization of
/// each morphism through an object `Z_i`. Every `Z_i -> A_i -> Z_{i+1}` must
/// be short exact; at the two ends the first deflation part must have its
/// kernel and the last inflation part its cokernel as short exact partners.
pub fn check_long_exact<C: Category>(
    cat: &C,
    seq: &[C::Morphism],
    factorizations: &[FactorizationOf<C>],
) -> Result<LongExactVerdict> {
    if seq.len() != factorizations.len() {
        return Err(Error::Invalid(format!(
            "{} morphisms but {} factorizations",
            seq.len(),
            factorizations.len()
        )));
    }
    if seq.is_empty() {
        return Ok(LongExactVerdict { joints: Vec::new() });
    }
    for (n, pair) in seq.windows(2).enumerate() {
        if cat.target(&pair[0]) != cat.source(&pair[1]) {
            return Err(Error::NotComposable(format!("morphisms {n} and {}", n + 1)));
        }
    }
    for (n, (f, fac)) in seq.iter().zip(factorizations).enumerate() {
        let composite = cat.compose(&fac.inflation_part, &fac.deflation_part)?;
        if !cat.equal(&composite, f) {
            return Err(Error::Invalid(format!("factorization {n} does not compose to its morphism")));
        }
    }
    let mut joints = Vec::with_capacity(seq.len() + 1);
    let first = &factorizations[0];
    joints.push(JointReport {
        joint: Joint::Start,
        report: cat.check_short_exact(&first.kernel.inclusion, &first.deflation_part)?,
    });
    for k in 1..seq.len() {
        joints.push(JointReport {
            joint: Joint::Interior(k),
            report: cat.check_short_exact(&factorizations[k - 1].inflation_part, &factorizations[k].deflation_part)?,
        });
    }
    let last = factorizations.last().expect("non-empty");
    joints.push(JointReport {
        joint: Joint::End,
        report: cat.check_short_exact(&last.inflation_part, &last.cokernel.projection)?,
    });
    Ok(LongExactVerdict { joints })
}

/// [`check_long_exact`] with the instance's own admissible factorizations.
/// A morphism that is not admissible makes the sequence not exact.
pub fn check_long_exact_auto<C: Category>(cat: &C, seq: &[C::Morphism]) -> Result<LongExactVerdict> {
    let mut facs = Vec::with_capacity(seq.len());
    for f in seq {
        match cat.admissible_factorization(f)? {
            Some(fac) => facs.push(fac),
            None => return Err(Error::Hypothesis(format!("{f:?} is not admissible"))),
        }
    }
    check_long_exact(cat, seq, &facs)
}

/// Exactness of `f` then `g` at their common object, using the instance's
/// factorizations.
pub fn check_exact_at<C: Category>(cat: &C, f: &C::Morphism, g: &C::Morphism) -> Result<bool> {
    if cat.target(f) != cat.source(g) {
        return Err(Error::NotComposable("check_exact_at".into()));
    }
    let (Some(ff), Some(gf)) = (cat.admissible_factorization(f)?, cat.admissible_factorization(g)?) else {
        return Ok(false);
    };
    Ok(cat.check_short_exact(&ff.inflation_part, &gf.deflation_part)?.is_exact())
}

/// The factorization `0 -> 0 -> B` style of a morphism whose source or
/// target is a zero object: deflation part into zero, inflation part out of
/// zero.
pub fn zero_factorization<C: Category>(cat: &C, a: &C::Object, b: &C::Object) -> Result<FactorizationOf<C>> {
    let deflation_part = cat.to_zero(a);
    let inflation_part = cat.from_zero(b);
    Ok(FactorizationOf::<C> {
        morphism: cat.zero_morphism(a, b),
        kernel: cat.kernel(&deflation_part)?,
        cokernel: cat.cokernel(&inflation_part)?,
        deflation_part,
        inflation_part,
        image: cat.zero_object(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgab::{Fgab, FpAbelianGroup};

    #[test]
    fn identity_after_zero_is_exact() {
        let cat = Fgab;
        let a = FpAbelianGroup::free(2);
        let zero = cat.from_zero(&a);
        let v = check_long_exact_auto(&cat, &[zero, cat.identity(&a)]).unwrap();
        assert!(v.is_exact());
    }

    #[test]
    fn defining_sequence_of_z2() {
        let cat = Fgab;
        let z = FpAbelianGroup::free(1);
        let z2 = FpAbelianGroup::cyclic(2);
        let seq = [
            cat.morphism(&z, &z, &[2]).unwrap(),
            cat.morphism(&z, &z2, &[1]).unwrap(),
            cat.to_zero(&z2),
        ];
        assert!(check_long_exact_auto(&cat, &seq).unwrap().is_exact());
    }

    #[test]
    fn wrong_quotient_fails_at_middle() {
        let cat = Fgab;
        let z = FpAbelianGroup::free(1);
        let z4 = FpAbelianGroup::cyclic(4);
        let seq = [
            cat.morphism(&z, &z, &[2]).unwrap(),
            cat.morphism(&z, &z4, &[1]).unwrap(),
            cat.to_zero(&z4),
        ];
        let v = check_long_exact_auto(&cat, &seq).unwrap();
        assert!(!v.is_exact());
        assert_eq!(v.first_failure().unwrap().joint, Joint::Interior(1));
        assert_eq!(v.at(2), Some(true));
    }

    #[test]
    fn length_mismatch_is_an_error() {
        let cat = Fgab;
        let a = FpAbelianGroup::free(1);
        assert!(check_long_exact(&cat, &[cat.identity(&a)], &[]).is_err());
    }
}
