//! The 3×3 lemma family.

use crate::category::{Category, CategoryExt, Kernel, Pullback};
use crate::error::{Error, Result};

/// A commutative 3×3 diagram:
///
/// ```text
/// A1 --phi1--> A2 --phi2--> A3
/// |f1          |f2          |f3
/// B1 --phi1'-> B2 --phi2'-> B3
/// |g1          |g2          |g3
/// C1 --phi1''> C2 --phi2''> C3
/// ```
#[derive(Clone, Debug)]
pub struct Grid<M> {
    pub phi1: M,
    pub phi2: M,
    pub phi1_prime: M,
    pub phi2_prime: M,
    pub phi1_pp: M,
    pub phi2_pp: M,
    pub f: [M; 3],
    pub g: [M; 3],
}

fn step<T>(name: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| e.at_step(name))
}

impl<M: Clone + std::fmt::Debug> Grid<M> {
    pub fn rows(&self) -> [(&M, &M); 3] {
        [(&self.phi1, &self.phi2), (&self.phi1_prime, &self.phi2_prime), (&self.phi1_pp, &self.phi2_pp)]
    }

    pub fn columns(&self) -> [(&M, &M); 3] {
        [(&self.f[0], &self.g[0]), (&self.f[1], &self.g[1]), (&self.f[2], &self.g[2])]
    }

    /// Checks that the four elementary squares commute.
    pub fn check_commutes<C: Category<Morphism = M>>(&self, cat: &C) -> Result<()> {
        let squares = [
            (&self.f[1], &self.phi1, &self.phi1_prime, &self.f[0], "f2∘phi1 = phi1'∘f1"),
            (&self.f[2], &self.phi2, &self.phi2_prime, &self.f[1], "f3∘phi2 = phi2'∘f2"),
            (&self.g[1], &self.phi1_prime, &self.phi1_pp, &self.g[0], "g2∘phi1' = phi1''∘g1"),
            (&self.g[2], &self.phi2_prime, &self.phi2_pp, &self.g[1], "g3∘phi2' = phi2''∘g2"),
        ];
        for (x, f, y, g, what) in squares {
            if !cat.equal(&cat.compose(x, f)?, &cat.compose(y, g)?) {
                return Err(Error::Hypothesis(format!("square {what} does not commute")));
            }
        }
        Ok(())
    }

    fn require_rows<C: Category<Morphism = M>>(&self, cat: &C, which: &[usize]) -> Result<()> {
        let rows = self.rows();
        for &r in which {
            cat.require_short_exact(rows[r].0, rows[r].1, &format!("row {}", r + 1), true)?;
        }
        Ok(())
    }

    fn require_columns<C: Category<Morphism = M>>(&self, cat: &C, which: &[usize]) -> Result<()> {
        let cols = self.columns();
        for &c in which {
            cat.require_short_exact(cols[c].0, cols[c].1, &format!("column {}", c + 1), true)?;
        }
        Ok(())
    }
}

/// Verdict of the dual 3×3 lemma.
#[derive(Clone, Debug)]
pub struct DualGridVerdict<O, M> {
    /// `A3' -> B3`, the kernel of `g3`.
    pub kernel_of_g3: Kernel<O, M>,
    /// `A2 -> A3'`.
    pub a2_to_kernel: M,
    /// The isomorphism `A3 -> A3'`.
    pub iso: M,
    pub third_column_exact: bool,
}

/// Rows short exact and the first two columns short exact imply the third
/// column is short exact. Follows the route through `A3' = ker(g3)` and the
/// comparison of the two cokernels of `A1 -> A2`.
pub fn three_by_three_dual<C: Category>(
    cat: &C,
    grid: &Grid<C::Morphism>,
) -> Result<DualGridVerdict<C::Object, C::Morphism>> {
    grid.check_commutes(cat)?;
    grid.require_rows(cat, &[0, 1, 2])?;
    grid.require_columns(cat, &[0, 1])?;
    let g3 = &grid.g[2];
    let kernel_of_g3 = cat.deflation_kernel(g3, "g3")?;
    let a2_to_kernel = step(
        "A2 -> A3'",
        cat.kernel_lift(g3, &kernel_of_g3.inclusion, &cat.compose(&grid.phi2_prime, &grid.f[1])?),
    )?;
    // The modified top row A1 -> A2 -> A3' is short exact by the 3x3 lemma.
    cat.require_short_exact(&grid.phi1, &a2_to_kernel, "A1 -> A2 -> A3'", false)?;
    let (iso, _) = step("A3 ≅ A3'", cat.compare_cokernels(&grid.phi1, &grid.phi2, &a2_to_kernel))?;
    cat.require_equal(&cat.compose(&kernel_of_g3.inclusion, &iso)?, &grid.f[2], "A3 -> A3' -> B3 = f3")?;
    let third_column_exact = cat.check_short_exact(&grid.f[2], g3)?.is_exact();
    Ok(DualGridVerdict { kernel_of_g3, a2_to_kernel, iso, third_column_exact })
}

/// Witnesses of the full 3×3 lemma.
#[derive(Clone, Debug)]
pub struct FullGridVerdict<O, M> {
    /// Pullback of `phi2''` along `g3`: `theta2: P -> C2`, `psi2: P -> B3`.
    pub pullback: Pullback<O, M>,
    /// `A3 -> P`, a kernel of `theta2`.
    pub theta1: M,
    /// `B2 -> P` with `psi2∘psi1 = phi2'`.
    pub psi1: M,
    /// `B1' -> B2`, the kernel of `phi2'`.
    pub kernel_of_phi2_prime: Kernel<O, M>,
    /// `A1 -> B1'` and `B1' -> C1`.
    pub f1_tilde: M,
    pub g1_tilde: M,
    /// `B1 -> B1'`, an isomorphism.
    pub psi: M,
    pub middle_row_exact: bool,
}

/// Columns and outer rows short exact, with `phi2'∘phi1' = 0`, imply the
/// middle row is short exact. Needs pullbacks of deflations.
pub fn full_three_by_three<C: Category>(
    cat: &C,
    grid: &Grid<C::Morphism>,
) -> Result<FullGridVerdict<C::Object, C::Morphism>> {
    if !cat.is_zero(&cat.compose(&grid.phi2_prime, &grid.phi1_prime)?) {
        return Err(Error::Precondition("phi2'∘phi1' is not zero".into()));
    }
    grid.check_commutes(cat)?;
    grid.require_columns(cat, &[0, 1, 2])?;
    grid.require_rows(cat, &[0, 2])?;
    let (g2, g3) = (&grid.g[1], &grid.g[2]);
    let pullback = cat.pullback_of_deflation(&grid.phi2_pp, g3).map_err(|e| e.at_step("pullback"))?;
    let (theta2, psi2) = (&pullback.lifted, &pullback.pulled_back);
    let a3 = cat.source(&grid.f[2]);
    let c2 = cat.target(&grid.phi1_pp);
    let theta1 = step(
        "theta1",
        cat.pullback_lift(&grid.phi2_pp, g3, &pullback, &cat.zero_morphism(&a3, &c2), &grid.f[2]),
    )?;
    if !cat.is_kernel_of(&theta1, theta2) {
        return Err(Error::Conclusion("theta1 is not a kernel of theta2".into()));
    }
    let psi1 = step("psi1", cat.pullback_lift(&grid.phi2_pp, g3, &pullback, g2, &grid.phi2_prime))?;
    cat.require_deflation(psi2, "psi2")?;
    cat.require_deflation(&psi1, "psi1")?;
    cat.require_equal(&cat.compose(psi2, &psi1)?, &grid.phi2_prime, "psi2∘psi1 = phi2'")?;
    cat.require_deflation(&grid.phi2_prime, "phi2'")?;
    let kernel_of_phi2_prime = cat.deflation_kernel(&grid.phi2_prime, "phi2'")?;
    let k = &kernel_of_phi2_prime.inclusion;
    let f1_tilde = step("A1 -> B1'", cat.kernel_lift(&grid.phi2_prime, k, &cat.compose(&grid.f[1], &grid.phi1)?))?;
    let g1_tilde = step("B1' -> C1", cat.kernel_lift(&grid.phi2_pp, &grid.phi1_pp, &cat.compose(g2, k)?))?;
    cat.require_short_exact(&f1_tilde, &g1_tilde, "A1 -> B1' -> C1", false)?;
    let psi = step("psi", cat.kernel_lift(&grid.phi2_prime, k, &grid.phi1_prime))?;
    cat.require_deflation(&psi, "psi")?;
    if !cat.is_iso(&psi) {
        return Err(Error::Conclusion("psi: B1 -> B1' is not an isomorphism".into()));
    }
    let middle_row_exact = cat.check_short_exact(&grid.phi1_prime, &grid.phi2_prime)?.is_exact();
    Ok(FullGridVerdict {
        pullback,
        theta1,
        psi1,
        kernel_of_phi2_prime,
        f1_tilde,
        g1_tilde,
        psi,
        middle_row_exact,
    })
}

/// Completes `q`, `g2`, `g3`, `r` (with `r∘g2 = g3∘q`) to a 3×3 diagram
/// using instance kernels: `B1 = ker q`, `C1 = ker r`, `A_i = ker g_i`.
/// `None` when the induced `g1` is not a deflation.
pub fn grid_from_deflations<C: Category>(
    cat: &C,
    q: &C::Morphism,
    g2: &C::Morphism,
    g3: &C::Morphism,
    r: &C::Morphism,
) -> Option<Grid<C::Morphism>> {
    let phi1_prime = cat.kernel(q).ok()?.inclusion;
    let phi1_pp = cat.kernel(r).ok()?.inclusion;
    let g1 = cat.kernel_lift(r, &phi1_pp, &cat.compose(g2, &phi1_prime).ok()?).ok()?;
    if !cat.is_deflation(&g1) {
        return None;
    }
    let f1 = cat.kernel(&g1).ok()?.inclusion;
    let f2 = cat.kernel(g2).ok()?.inclusion;
    let f3 = cat.kernel(g3).ok()?.inclusion;
    let phi1 = cat.kernel_lift(g2, &f2, &cat.compose(&phi1_prime, &f1).ok()?).ok()?;
    let phi2 = cat.kernel_lift(g3, &f3, &cat.compose(q, &f2).ok()?).ok()?;
    Some(Grid {
        phi1,
        phi2,
        phi1_prime,
        phi2_prime: q.clone(),
        phi1_pp,
        phi2_pp: r.clone(),
        f: [f1, f2, f3],
        g: [g1, g2.clone(), g3.clone()],
    })
}

/// Top two rows of a 3×3 diagram with deflations as verticals.
#[derive(Clone, Debug)]
pub struct KernelGrid<M> {
    pub phi1: M,
    pub phi2: M,
    pub phi1_prime: M,
    pub phi2_prime: M,
    pub f: [M; 3],
}

/// Induced maps on kernels computed both directly and through the pullback
/// of `phi2'` along `f3`.
#[derive(Clone, Debug)]
pub struct KernelSequence<O, M> {
    pub kernels: [Kernel<O, M>; 3],
    pub psi1: M,
    pub psi2: M,
    pub exact: bool,
    pub via_pullback: Option<PullbackRoute<O, M>>,
    /// Why the pullback route stopped, when the pullback exists but one of
    /// the steps that rely on (4a) or (4b) fails.
    pub pullback_failure: Option<Error>,
}

#[derive(Clone, Debug)]
pub struct PullbackRoute<O, M> {
    /// Pullback of `phi2'` along `f3`: `pi2: P -> B2`, `phi2'': P -> A3`.
    pub pullback: Pullback<O, M>,
    /// `pi1: A2 -> P`.
    pub pi1: M,
    /// `phi1'': B1 -> P`.
    pub phi1_pp: M,
    /// `k3': K3 -> P`.
    pub k3_prime: M,
    pub psi2: M,
    pub exact: bool,
}

impl<O, M> KernelSequence<O, M> {
    /// Whether the pullback route ran and produced the same `psi2`.
    pub fn paths_agree<C: Category<Object = O, Morphism = M>>(&self, cat: &C) -> Option<bool> {
        self.via_pullback.as_ref().map(|r| cat.equal(&r.psi2, &self.psi2))
    }
}

pub fn induced_kernel_sequence<C: Category>(
    cat: &C,
    grid: &KernelGrid<C::Morphism>,
) -> Result<KernelSequence<C::Object, C::Morphism>> {
    cat.require_short_exact(&grid.phi1, &grid.phi2, "top row", true)?;
    cat.require_short_exact(&grid.phi1_prime, &grid.phi2_prime, "bottom row", true)?;
    for (n, f) in grid.f.iter().enumerate() {
        if !cat.is_deflation(f) {
            return Err(Error::Hypothesis(format!("f{} is not a deflation", n + 1)));
        }
    }
    let left = (cat.compose(&grid.f[1], &grid.phi1)?, cat.compose(&grid.phi1_prime, &grid.f[0])?);
    let right = (cat.compose(&grid.f[2], &grid.phi2)?, cat.compose(&grid.phi2_prime, &grid.f[1])?);
    if !cat.equal(&left.0, &left.1) {
        return Err(Error::Hypothesis("square f2∘phi1 = phi1'∘f1 does not commute".into()));
    }
    if !cat.equal(&right.0, &right.1) {
        return Err(Error::Hypothesis("square f3∘phi2 = phi2'∘f2 does not commute".into()));
    }
    let k1 = cat.deflation_kernel(&grid.f[0], "f1")?;
    let k2 = cat.deflation_kernel(&grid.f[1], "f2")?;
    let k3 = cat.deflation_kernel(&grid.f[2], "f3")?;
    let psi1 = step("psi1", cat.kernel_lift(&grid.f[1], &k2.inclusion, &cat.compose(&grid.phi1, &k1.inclusion)?))?;
    let psi2 = step("psi2", cat.kernel_lift(&grid.f[2], &k3.inclusion, &cat.compose(&grid.phi2, &k2.inclusion)?))?;
    let exact = cat.check_short_exact(&psi1, &psi2)?.is_exact();

    let (via_pullback, pullback_failure) = match cat.pullback_of_deflation(&grid.phi2_prime, &grid.f[2]) {
        Err(Error::Unsupported(_)) => (None, None),
        Err(e) => return Err(e.at_step("pullback")),
        Ok(pullback) => match pullback_route(cat, grid, &k1, &k2, &k3, &psi1, pullback) {
            Ok(route) => (Some(route), None),
            Err(e) => (None, Some(e)),
        },
    };
    Ok(KernelSequence { kernels: [k1, k2, k3], psi1, psi2, exact, via_pullback, pullback_failure })
}

fn pullback_route<C: Category>(
    cat: &C,
    grid: &KernelGrid<C::Morphism>,
    k1: &Kernel<C::Object, C::Morphism>,
    k2: &Kernel<C::Object, C::Morphism>,
    k3: &Kernel<C::Object, C::Morphism>,
    psi1: &C::Morphism,
    pullback: Pullback<C::Object, C::Morphism>,
) -> Result<PullbackRoute<C::Object, C::Morphism>> {
    let (p, f3) = (&grid.phi2_prime, &grid.f[2]);
    let (pi2, phi2_pp) = (&pullback.lifted, &pullback.pulled_back);
    let pi1 = step("pi1", cat.pullback_lift(p, f3, &pullback, &grid.f[1], &grid.phi2))?;
    let b1 = cat.source(&grid.phi1_prime);
    let a3 = cat.target(&grid.phi2);
    let phi1_pp = step(
        "phi1''",
        cat.pullback_lift(p, f3, &pullback, &grid.phi1_prime, &cat.zero_morphism(&b1, &a3)),
    )?;
    if !cat.is_kernel_of(&phi1_pp, phi2_pp) {
        return Err(Error::Conclusion("phi1'' is not a kernel of phi2''".into()));
    }
    cat.require_deflation(&pi1, "pi1")?;
    if !cat.is_kernel_of(&cat.compose(&grid.phi1, &k1.inclusion)?, &pi1) {
        return Err(Error::Conclusion("phi1∘k1 is not a kernel of pi1".into()));
    }
    let b2 = cat.source(p);
    let k3_prime = step(
        "k3'",
        cat.pullback_lift(p, f3, &pullback, &cat.zero_morphism(&k3.object, &b2), &k3.inclusion),
    )?;
    cat.require_deflation(pi2, "pi2")?;
    if !cat.is_kernel_of(&k3_prime, pi2) {
        return Err(Error::Conclusion("k3' is not a kernel of pi2".into()));
    }
    let psi2 = step("psi2 via P", cat.kernel_lift(pi2, &k3_prime, &cat.compose(&pi1, &k2.inclusion)?))?;
    let exact = cat.is_deflation(&psi2) && cat.is_kernel_of(psi1, &psi2);
    Ok(PullbackRoute { pi1, phi1_pp, k3_prime, psi2, exact, pullback })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgab::{AbMorphism, Fgab, FpAbelianGroup};

    fn m(src: &FpAbelianGroup, tgt: &FpAbelianGroup, data: &[i64]) -> AbMorphism {
        Fgab.morphism(src, tgt, data).unwrap()
    }

    fn split_row(a: &FpAbelianGroup, b: &FpAbelianGroup) -> (AbMorphism, AbMorphism) {
        (Fgab.injection(&[a, b], 0), Fgab.projection(&[a, b], 1))
    }

    fn doubling_grid() -> Grid<AbMorphism> {
        let cat = Fgab;
        let z = FpAbelianGroup::free(1);
        let z2 = FpAbelianGroup::cyclic(2);
        let (phi1, phi2) = split_row(&z, &z);
        let (phi1_pp, phi2_pp) = split_row(&z2, &z2);
        let two = |a: &FpAbelianGroup| cat.identity(a).scale(2);
        let z_sq = FpAbelianGroup::free(2);
        let red = |a: &FpAbelianGroup, b: &FpAbelianGroup| AbMorphism::new(a.clone(), b.clone(), cat.identity(a).matrix().clone()).unwrap();
        let z2_sq = FpAbelianGroup::direct_sum(&[&z2, &z2]);
        Grid {
            phi1: phi1.clone(),
            phi2: phi2.clone(),
            phi1_prime: phi1,
            phi2_prime: phi2,
            phi1_pp,
            phi2_pp,
            f: [two(&z), two(&z_sq), two(&z)],
            g: [red(&z, &z2), red(&z_sq, &z2_sq), red(&z, &z2)],
        }
    }

    #[test]
    fn dual_lemma_on_doubling_grid() {
        let cat = Fgab;
        let v = three_by_three_dual(&cat, &doubling_grid()).unwrap();
        assert!(v.third_column_exact);
        assert!(cat.is_iso(&v.iso));
    }

    #[test]
    fn full_lemma_on_doubling_grid() {
        let cat = Fgab;
        let v = full_three_by_three(&cat, &doubling_grid()).unwrap();
        assert!(v.middle_row_exact);
        assert!(cat.is_iso(&v.psi));
    }

    #[test]
    fn full_lemma_on_direct_sum_grid() {
        let cat = Fgab;
        let z = FpAbelianGroup::free(1);
        let z2 = FpAbelianGroup::free(2);
        let (i, p) = split_row(&z, &z);
        let sum = |x: &AbMorphism, y: &AbMorphism| cat.direct_sum_map(&[x, y]);
        let (f, g) = (cat.injection(&[&z, &z], 0), cat.projection(&[&z, &z], 1));
        let (f2, g2) = (cat.injection(&[&z2, &z2], 0), cat.projection(&[&z2, &z2], 1));
        let grid = Grid {
            phi1: i.clone(),
            phi2: p.clone(),
            phi1_prime: sum(&i, &i),
            phi2_prime: sum(&p, &p),
            phi1_pp: i,
            phi2_pp: p,
            f: [f.clone(), f2, f],
            g: [g.clone(), g2, g],
        };
        let v = full_three_by_three(&cat, &grid).unwrap();
        assert!(v.middle_row_exact);
    }

    #[test]
    fn full_lemma_rejects_nonzero_middle_composite() {
        let cat = Fgab;
        let mut grid = doubling_grid();
        let z = FpAbelianGroup::free(1);
        let z_sq = FpAbelianGroup::free(2);
        grid.phi1_prime = m(&z, &z_sq, &[1, 1]);
        let err = full_three_by_three(&cat, &grid).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn kernels_of_mod_two_reductions() {
        let cat = Fgab;
        let grid = doubling_grid();
        let kg = KernelGrid {
            phi1: grid.phi1_prime.clone(),
            phi2: grid.phi2_prime.clone(),
            phi1_prime: grid.phi1_pp.clone(),
            phi2_prime: grid.phi2_pp.clone(),
            f: grid.g.clone(),
        };
        let ks = induced_kernel_sequence(&cat, &kg).unwrap();
        assert!(ks.exact);
        let names: Vec<String> = ks.kernels.iter().map(|k| k.object.to_string()).collect();
        assert_eq!(names, ["Z", "Z^2", "Z"]);
        assert_eq!(ks.kernels[0].inclusion.matrix(), &crate::IntMatrix::from_i64(1, 1, &[2]));
        assert_eq!(ks.paths_agree(&cat), Some(true));
    }

    #[test]
    fn identity_verticals_give_zero_kernels() {
        let cat = Fgab;
        let z = FpAbelianGroup::free(1);
        let (i, p) = split_row(&z, &z);
        let id = |a: &FpAbelianGroup| cat.identity(a);
        let kg = KernelGrid {
            phi1: i.clone(),
            phi2: p.clone(),
            phi1_prime: i,
            phi2_prime: p,
            f: [id(&z), id(&FpAbelianGroup::free(2)), id(&z)],
        };
        let ks = induced_kernel_sequence(&cat, &kg).unwrap();
        assert!(ks.exact);
        assert!(ks.kernels.iter().all(|k| k.object.is_trivial()));
        assert_eq!(ks.paths_agree(&cat), Some(true));
    }
}
