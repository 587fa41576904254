//! Seeded random diagrams over finitely presented abelian groups.
//!
//! Every generator builds its output from the instance operations so that
//! the hypotheses of the corresponding construction hold by design. Groups
//! come in canonical or scrambled presentations.

use num_bigint::BigInt;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::axioms::AxiomSampler;
use crate::category::{Category, CategoryExt};
use crate::chain::{AdmissibleComplex, AdmissibleComplexOf, ComplexSes};
use crate::engine::grid::{grid_from_deflations, Grid, KernelGrid};
use crate::engine::snake::{snake, SnakeDiagram, SnakeDiagramOf};
use crate::fgab::{AbMorphism, Fgab, FpAbelianGroup};
use crate::hom::FreeComplex;
use crate::matrix::{int, IntMatrix};

pub type ComplexSesOf<C> = ComplexSes<<C as Category>::Object, <C as Category>::Morphism>;

/// A morphism of snake diagrams `source -> target`: `a` between the top
/// rows, `b` between the bottom rows.
#[derive(Clone, Debug)]
pub struct SnakeMorphism {
    pub source: SnakeDiagramOf<Fgab>,
    pub target: SnakeDiagramOf<Fgab>,
    pub a: [AbMorphism; 3],
    pub b: [AbMorphism; 3],
}

pub struct FgabGen {
    rng: ChaCha8Rng,
    pub max_rank: usize,
    pub max_entry: i64,
}

impl FgabGen {
    /// Ranks at most 3, entries in `[-5, 5]`.
    pub fn new(seed: u64) -> Self {
        Self::with_bounds(seed, 3, 5)
    }

    pub fn with_bounds(seed: u64, max_rank: usize, max_entry: i64) -> Self {
        FgabGen { rng: ChaCha8Rng::seed_from_u64(seed), max_rank, max_entry: max_entry.max(2) }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn entry(&mut self) -> i64 {
        self.rng.gen_range(-self.max_entry..=self.max_entry)
    }

    fn rank(&mut self, min: usize) -> usize {
        self.rng.gen_range(min..=self.max_rank.max(min))
    }

    pub fn matrix(&mut self, rows: usize, cols: usize) -> IntMatrix {
        let data: Vec<i64> = (0..rows * cols).map(|_| self.entry()).collect();
        IntMatrix::from_i64(rows, cols, &data)
    }

    /// A random unimodular `U` with its inverse.
    pub fn unimodular(&mut self, n: usize) -> (IntMatrix, IntMatrix) {
        let mut u = IntMatrix::identity(n);
        let mut v = IntMatrix::identity(n);
        if n < 2 {
            if n == 1 && self.rng.gen_bool(0.5) {
                u = u.neg();
                v = v.neg();
            }
            return (u, v);
        }
        for _ in 0..2 * n {
            let i = self.rng.gen_range(0..n);
            let mut j = self.rng.gen_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            let k = int(self.rng.gen_range(-2..=2));
            // Row i += k·row j on u; column j -= k·column i on v.
            for c in 0..n {
                let x = u.get(i, c) + &k * u.get(j, c);
                u.set(i, c, x);
            }
            for r in 0..n {
                let x = v.get(r, j) - &k * v.get(r, i);
                v.set(r, j, x);
            }
        }
        (u, v)
    }

    /// A group in canonical presentation with at most `max_rank` generators.
    pub fn canonical_group(&mut self) -> FpAbelianGroup {
        let n = self.rank(0);
        let diag: Vec<i64> = (0..n)
            .map(|_| if self.rng.gen_bool(0.5) { 0 } else { self.rng.gen_range(2..=self.max_entry) })
            .collect();
        let torsion: Vec<i64> = diag.iter().copied().filter(|&d| d != 0).collect();
        let mut rel = IntMatrix::zeros(n, torsion.len());
        let mut col = 0;
        for (i, &d) in diag.iter().enumerate() {
            if d != 0 {
                rel.set(i, col, int(d));
                col += 1;
            }
        }
        let g = FpAbelianGroup::new(n, rel).expect("shape is consistent");
        Fgab.canonical_form(&g).0
    }

    /// A random group, in a scrambled presentation half of the time.
    pub fn group(&mut self) -> FpAbelianGroup {
        let g = self.canonical_group();
        if self.rng.gen_bool(0.5) {
            self.scramble(&g).0
        } else {
            g
        }
    }

    /// The same group under a random change of generators, with the
    /// isomorphism from `g`.
    pub fn scramble(&mut self, g: &FpAbelianGroup) -> (FpAbelianGroup, AbMorphism) {
        let (u, _) = self.unimodular(g.gens());
        let h = FpAbelianGroup::new(g.gens(), u.mul(g.relations())).expect("shape is consistent");
        let iso = AbMorphism::new(g.clone(), h.clone(), u).expect("unimodular change of generators");
        (h, iso)
    }

    /// A uniformly shaped random homomorphism `a -> b`.
    pub fn morphism(&mut self, a: &FpAbelianGroup, b: &FpAbelianGroup) -> AbMorphism {
        let (ca, ia) = Fgab.canonical_form(a);
        let (cb, ib) = Fgab.canonical_form(b);
        let ta = ca.relations().cols();
        let tb = cb.relations().cols();
        let mut m = IntMatrix::zeros(cb.gens(), ca.gens());
        for j in 0..ca.gens() {
            for i in 0..cb.gens() {
                let x = self.entry();
                let v = if j < ta {
                    let d = ca.relations().get(j, j).clone();
                    if i < tb {
                        let e = cb.relations().get(i, i).clone();
                        (&e / d.gcd(&e)) * int(x)
                    } else {
                        int(0)
                    }
                } else {
                    int(x)
                };
                m.set(i, j, v);
            }
        }
        let core = AbMorphism::new(ca, cb, m).expect("canonical homomorphism is well defined");
        let back = Fgab.inverse(&ib).expect("canonical form is an isomorphism");
        Fgab.compose_all(&[&back, &core, &ia]).expect("composable")
    }

    /// A random map from a free group into `b`.
    pub fn subgroup(&mut self, b: &FpAbelianGroup, max_gens: usize) -> AbMorphism {
        let k = self.rng.gen_range(0..=max_gens);
        self.morphism(&FpAbelianGroup::free(k), b)
    }

    /// `b -> b/N` for a random subgroup `N`.
    pub fn deflation_from(&mut self, b: &FpAbelianGroup) -> AbMorphism {
        let n = self.subgroup(b, 2);
        Fgab.cokernel(&n).expect("cokernels exist").projection
    }

    /// A deflation onto `c`: `c ⊕ X -> c`, `[id, h]`.
    pub fn deflation_onto(&mut self, c: &FpAbelianGroup) -> AbMorphism {
        let x = self.group();
        let h = self.morphism(&x, c);
        Fgab.copairing(&[&Fgab.identity(c), &h]).expect("common target")
    }

    pub fn deflation(&mut self) -> AbMorphism {
        let b = self.group();
        self.deflation_from(&b)
    }

    /// A short exact sequence `(kernel inclusion, deflation)`.
    pub fn short_exact(&mut self) -> (AbMorphism, AbMorphism) {
        let p = self.deflation();
        let k = Fgab.kernel(&p).expect("kernels exist").inclusion;
        (k, p)
    }

    /// A chain `A -f-> B -g-> C` with `f` an inflation, `g` a deflation and
    /// `g∘f = 0`; exact at `B` when `exact` is set.
    pub fn chain(&mut self, exact: bool) -> (AbMorphism, AbMorphism) {
        let b = self.group();
        let u = self.subgroup(&b, 2);
        let q = Fgab.cokernel(&u).expect("cokernels exist").projection;
        let f = Fgab.kernel(&q).expect("kernels exist").inclusion;
        let w = if exact { Fgab.zero_morphism(&FpAbelianGroup::zero(), &b) } else { self.subgroup(&b, 2) };
        let both = Fgab.copairing(&[&u, &w]).expect("common target");
        let g = Fgab.cokernel(&both).expect("cokernels exist").projection;
        (f, g)
    }

    /// A snake diagram whose verticals are arbitrary homomorphisms.
    pub fn snake_diagram(&mut self) -> SnakeDiagramOf<Fgab> {
        let a2 = self.group();
        let phi2 = self.deflation_from(&a2);
        let phi1 = Fgab.kernel(&phi2).expect("kernels exist").inclusion;

        let n = self.rank(1);
        let f2m = self.matrix(n, a2.gens());
        let extra_cols = self.rng.gen_range(0..=1);
        let extra = self.matrix(n, extra_cols);
        let forced = f2m.mul(a2.relations());
        let b2 = FpAbelianGroup::new(n, IntMatrix::hstack(n, &[&extra, &forced])).expect("shape is consistent");
        let f2 = AbMorphism::new(a2, b2.clone(), f2m).expect("relations were added to make f2 well defined");

        let f2phi1 = Fgab.compose(&f2, &phi1).expect("composable");
        let y = self.subgroup(&b2, 1);
        let span = Fgab.copairing(&[&f2phi1, &y]).expect("common target");
        let phi2_prime = Fgab.cokernel(&span).expect("cokernels exist").projection;
        let phi1_prime = Fgab.kernel(&phi2_prime).expect("kernels exist").inclusion;

        let f1 = Fgab.kernel_lift(&phi2_prime, &phi1_prime, &f2phi1).expect("f2∘phi1 lands in the kernel");
        let g3 = Fgab.compose(&phi2_prime, &f2).expect("composable");
        let f3 = Fgab.cokernel_colift(&phi1, &phi2, &g3).expect("phi2'∘f2 kills the kernel");
        SnakeDiagram::new(&Fgab, (phi1, phi2), (phi1_prime, phi2_prime), [f1, f2, f3]).expect("all verticals are admissible")
    }

    /// A morphism of snake diagrams: the source has a larger top row mapped
    /// onto the original, the target a quotient of the bottom row.
    /// Three times in four the base diagram has a nonzero connecting map.
    pub fn snake_morphism(&mut self) -> SnakeMorphism {
        let want_delta = self.rng.gen_bool(0.75);
        let mut d = self.snake_diagram();
        for _ in 0..50 {
            if !want_delta || !Fgab.is_zero(&snake(&Fgab, &d).expect("generated diagrams are valid").delta) {
                break;
            }
            d = self.snake_diagram();
        }
        let a2 = Fgab.source(&d.phi2);
        let a3 = Fgab.target(&d.phi2);

        let free = FpAbelianGroup::free(self.rng.gen_range(0..=2));
        let h = self.morphism(&free, &a2);
        let a2_map = Fgab.copairing(&[&Fgab.identity(&a2), &h]).expect("common target");
        let top2 = Fgab.compose(&d.phi2, &a2_map).expect("composable");
        let top1 = Fgab.kernel(&top2).expect("kernels exist").inclusion;
        let a1_map = Fgab
            .kernel_lift(&d.phi2, &d.phi1, &Fgab.compose(&a2_map, &top1).expect("composable"))
            .expect("a2 maps kernel to kernel");
        let a = [a1_map, a2_map, Fgab.identity(&a3)];

        let b2 = Fgab.source(&d.phi2_prime);
        let n = if self.rng.gen_bool(0.5) {
            Fgab.zero_morphism(&FpAbelianGroup::zero(), &b2)
        } else {
            self.subgroup(&b2, 1)
        };
        let b2_map = Fgab.cokernel(&n).expect("cokernels exist").projection;
        let pn = Fgab.compose(&d.phi2_prime, &n).expect("composable");
        let b3_map = Fgab.cokernel(&pn).expect("cokernels exist").projection;
        let bottom2 = Fgab
            .cokernel_colift(&n, &b2_map, &Fgab.compose(&b3_map, &d.phi2_prime).expect("composable"))
            .expect("N maps into the image of N");
        let bottom1 = Fgab.kernel(&bottom2).expect("kernels exist").inclusion;
        let b1_map = Fgab
            .kernel_lift(&bottom2, &bottom1, &Fgab.compose(&b2_map, &d.phi1_prime).expect("composable"))
            .expect("b2 maps kernel to kernel");
        let b = [b1_map, b2_map, b3_map];

        let verticals = |g: &dyn Fn(usize) -> AbMorphism| -> [AbMorphism; 3] { [g(0), g(1), g(2)] };
        let source_f = verticals(&|k| Fgab.compose(&d.f[k].morphism, &a[k]).expect("composable"));
        let target_f = verticals(&|k| Fgab.compose(&b[k], &d.f[k].morphism).expect("composable"));
        let source = SnakeDiagram::new(&Fgab, (top1, top2), (d.phi1_prime.clone(), d.phi2_prime.clone()), source_f)
            .expect("admissible");
        let target =
            SnakeDiagram::new(&Fgab, (d.phi1.clone(), d.phi2.clone()), (bottom1, bottom2), target_f).expect("admissible");
        SnakeMorphism { source, target, a, b }
    }

    /// A short exact top row with deflations onto the quotient row by a
    /// random subgroup `N` of the middle object.
    pub fn kernel_grid(&mut self) -> KernelGrid<AbMorphism> {
        let (phi1, phi2) = self.short_exact();
        let a2 = Fgab.source(&phi2);
        let n = self.subgroup(&a2, 2);
        let f2 = Fgab.cokernel(&n).expect("cokernels exist").projection;
        let f3 = Fgab.cokernel(&Fgab.compose(&phi2, &n).expect("composable")).expect("cokernels exist").projection;
        let phi2_prime = Fgab
            .cokernel_colift(&n, &f2, &Fgab.compose(&f3, &phi2).expect("composable"))
            .expect("N maps into the image of N");
        let phi1_prime = Fgab.kernel(&phi2_prime).expect("kernels exist").inclusion;
        let f1 = Fgab
            .kernel_lift(&phi2_prime, &phi1_prime, &Fgab.compose(&f2, &phi1).expect("composable"))
            .expect("f2 maps kernel to kernel");
        KernelGrid { phi1, phi2, phi1_prime, phi2_prime, f: [f1, f2, f3] }
    }

    /// Deflations `q: B2 -> B3`, `g2: B2 -> C2`, `g3: B3 -> C3` and
    /// `r: C2 -> C3` with `r∘g2 = g3∘q`, from two random subgroups of `B2`.
    pub fn grid_data(&mut self) -> [AbMorphism; 4] {
        let b2 = self.group();
        let m = self.subgroup(&b2, 2);
        let n = self.subgroup(&b2, 2);
        let q = Fgab.cokernel(&m).expect("cokernels exist").projection;
        let g2 = Fgab.cokernel(&n).expect("cokernels exist").projection;
        let g3 = Fgab.cokernel(&Fgab.compose(&q, &n).expect("composable")).expect("cokernels exist").projection;
        let r = Fgab
            .cokernel_colift(&n, &g2, &Fgab.compose(&g3, &q).expect("composable"))
            .expect("N maps into the image of N");
        [q, g2, g3, r]
    }

    /// A 3×3 diagram with short exact rows and columns.
    pub fn grid(&mut self) -> Grid<AbMorphism> {
        let [q, g2, g3, r] = self.grid_data();
        grid_from_deflations(&Fgab, &q, &g2, &g3, &r).expect("quotient grids are admissible")
    }

    /// Deflations `phi2: A2 -> A3`, `phi2': B2 -> A3` and `f2: A2 -> B2`
    /// with `phi2'∘f2 = phi2`.
    pub fn kernel_square(&mut self) -> [AbMorphism; 3] {
        let a2 = self.group();
        let phi2 = self.deflation_from(&a2);
        let a3 = Fgab.target(&phi2);
        let e = if self.rng.gen_bool(0.5) { self.group() } else { FpAbelianGroup::zero() };
        let v = self.morphism(&a2, &e);
        let graph = Fgab.pairing(&[&Fgab.identity(&a2), &v]).expect("common source");
        let onto = Fgab.copairing(&[&phi2, &Fgab.zero_morphism(&e, &a3)]).expect("common target");
        let (f2, phi2_prime) = if self.rng.gen_bool(0.5) {
            let k = Fgab.kernel(&onto).expect("kernels exist").inclusion;
            let s = self.subgroup(&Fgab.source(&k), 2);
            let n = Fgab.compose(&k, &s).expect("composable");
            let quo = Fgab.cokernel(&n).expect("cokernels exist").projection;
            let down = Fgab.cokernel_colift(&n, &quo, &onto).expect("N lies in the kernel");
            (Fgab.compose(&quo, &graph).expect("composable"), down)
        } else {
            (graph, onto)
        };
        [phi2, phi2_prime, f2]
    }

    /// A bounded complex of free groups over `lo..lo+len`: a sum of
    /// one-object and two-object pieces, in a random basis.
    pub fn free_complex(&mut self, lo: i64, len: usize) -> FreeComplex {
        let len = len.max(1);
        let mut ranks = vec![0usize; len];
        // (degree, multiplier): a piece Z -k-> Z starting at `degree`.
        let mut arrows: Vec<(usize, i64)> = Vec::new();
        let mut points: Vec<usize> = Vec::new();
        let pieces = self.rng.gen_range(1..=len + 1);
        for _ in 0..pieces {
            let i = self.rng.gen_range(0..len);
            if i + 1 < len && self.rng.gen_bool(0.6) {
                if ranks[i] >= self.max_rank || ranks[i + 1] >= self.max_rank {
                    continue;
                }
                let mut k = self.rng.gen_range(1..=self.max_entry.min(5));
                if self.rng.gen_bool(0.5) {
                    k = -k;
                }
                arrows.push((i, k));
                ranks[i] += 1;
                ranks[i + 1] += 1;
            } else if ranks[i] < self.max_rank {
                points.push(i);
                ranks[i] += 1;
            }
        }
        let mut d: Vec<IntMatrix> = (0..len - 1).map(|i| IntMatrix::zeros(ranks[i + 1], ranks[i])).collect();
        let mut used = vec![0usize; len];
        for &(i, k) in &arrows {
            let (c, r) = (used[i], used[i + 1]);
            d[i].set(r, c, int(k));
            used[i] += 1;
            used[i + 1] += 1;
        }
        let bases: Vec<(IntMatrix, IntMatrix)> = ranks.iter().map(|&r| self.unimodular(r)).collect();
        let d: Vec<IntMatrix> = d.iter().enumerate().map(|(i, m)| bases[i + 1].0.mul(m).mul(&bases[i].1)).collect();
        FreeComplex::new(lo, ranks, d).expect("pieces square to zero")
    }

    /// A pointwise short exact sequence of complexes over a window of
    /// at most `max_len` degrees: either a twisted direct sum or reduction
    /// modulo `m` with its pointwise kernel.
    pub fn complex_ses(&mut self, lo: i64, max_len: usize) -> ComplexSesOf<Fgab> {
        let len = self.rng.gen_range(1..=max_len.max(1));
        if self.rng.gen_bool(0.5) {
            self.twisted_ses(lo, len)
        } else {
            self.reduction_ses(lo, len)
        }
    }

    fn twisted_ses(&mut self, lo: i64, len: usize) -> ComplexSesOf<Fgab> {
        let a = self.free_complex(lo, len);
        let c = self.free_complex(lo, len);
        let hi = lo + len as i64 - 1;
        let t: Vec<IntMatrix> = (lo..=hi + 1).map(|i| self.matrix(a.rank(i), c.rank(i))).collect();
        let tm = |i: i64| &t[(i - lo) as usize];
        let mut diffs = Vec::new();
        for i in lo..hi {
            // h_i = d_A t_i - t_{i+1} d_C.
            let h = a.differential(i).mul(tm(i)).sub(&tm(i + 1).mul(&c.differential(i)));
            let top = IntMatrix::hstack(a.rank(i + 1), &[&a.differential(i), &h]);
            let bottom = IntMatrix::hstack(c.rank(i + 1), &[&IntMatrix::zeros(c.rank(i + 1), a.rank(i)), &c.differential(i)]);
            diffs.push(IntMatrix::vstack(a.rank(i) + c.rank(i), &[&top, &bottom]));
        }
        let ranks: Vec<usize> = (lo..=hi).map(|i| a.rank(i) + c.rank(i)).collect();
        let mid = FreeComplex::new(lo, ranks, diffs).expect("twisted differential squares to zero");
        let (aa, mm, cc) = (
            a.to_admissible(lo, hi).expect("window"),
            mid.to_admissible(lo, hi).expect("window"),
            c.to_admissible(lo, hi).expect("window"),
        );
        let mut i_maps = Vec::new();
        let mut p_maps = Vec::new();
        for i in lo..=hi {
            let (ra, rc) = (a.rank(i), c.rank(i));
            let parts = [FpAbelianGroup::free(ra), FpAbelianGroup::free(rc)];
            let refs = [&parts[0], &parts[1]];
            i_maps.push(Fgab.injection(&refs, 0));
            p_maps.push(Fgab.projection(&refs, 1));
        }
        ComplexSes { a: aa, a_prime: mm, a_pp: cc, i: i_maps, p: p_maps }
    }

    fn reduction_ses(&mut self, lo: i64, len: usize) -> ComplexSesOf<Fgab> {
        let x = self.free_complex(lo, len);
        let hi = lo + len as i64 - 1;
        let m = self.rng.gen_range(2..=self.max_entry.min(5));
        let mid = x.to_admissible(lo, hi).expect("window");
        let objects: Vec<FpAbelianGroup> =
            (lo..=hi).map(|i| FpAbelianGroup::from_invariants(0, &vec![BigInt::from(m); x.rank(i)])).collect();
        let diffs: Vec<AbMorphism> = (lo..hi)
            .map(|i| {
                let k = (i - lo) as usize;
                AbMorphism::new(objects[k].clone(), objects[k + 1].clone(), x.differential(i)).expect("well defined mod m")
            })
            .collect();
        let reduced = AdmissibleComplex::with_objects(&Fgab, lo, objects.clone(), &diffs).expect("d∘d = 0 mod m");
        let p: Vec<AbMorphism> = (lo..=hi)
            .map(|i| {
                let k = (i - lo) as usize;
                let r = x.rank(i);
                AbMorphism::new(FpAbelianGroup::free(r), objects[k].clone(), IntMatrix::identity(r)).expect("reduction")
            })
            .collect();
        let kernels: Vec<_> = p.iter().map(|pi| Fgab.kernel(pi).expect("kernels exist")).collect();
        let kd: Vec<AbMorphism> = (lo..hi)
            .map(|i| {
                let k = (i - lo) as usize;
                let down = Fgab.compose(&mid.differential(&Fgab, i).expect("window").morphism, &kernels[k].inclusion);
                Fgab.kernel_lift(&p[k + 1], &kernels[k + 1].inclusion, &down.expect("composable"))
                    .expect("d maps m·A into m·A")
            })
            .collect();
        let objects = kernels.iter().map(|k| k.object.clone()).collect();
        let a = AdmissibleComplex::with_objects(&Fgab, lo, objects, &kd).expect("restricted differentials");
        ComplexSes { a, a_prime: mid, a_pp: reduced, i: kernels.into_iter().map(|k| k.inclusion).collect(), p }
    }

    /// A complex of groups given as an admissible complex over `lo..lo+len`.
    pub fn admissible_complex(&mut self, lo: i64, len: usize) -> AdmissibleComplexOf<Fgab> {
        let x = self.free_complex(lo, len);
        x.to_admissible(lo, lo + len.max(1) as i64 - 1).expect("window")
    }
}

impl AxiomSampler<Fgab> for FgabGen {
    fn object(&mut self) -> FpAbelianGroup {
        self.group()
    }

    fn morphism(&mut self, a: &FpAbelianGroup, b: &FpAbelianGroup) -> AbMorphism {
        FgabGen::morphism(self, a, b)
    }

    fn isomorphism(&mut self) -> AbMorphism {
        let g = self.group();
        self.scramble(&g).1
    }

    fn deflation(&mut self) -> AbMorphism {
        FgabGen::deflation(self)
    }

    fn deflation_from(&mut self, b: &FpAbelianGroup) -> AbMorphism {
        FgabGen::deflation_from(self, b)
    }

    fn deflation_onto(&mut self, c: &FpAbelianGroup) -> AbMorphism {
        FgabGen::deflation_onto(self, c)
    }

    fn grid_data(&mut self) -> [AbMorphism; 4] {
        FgabGen::grid_data(self)
    }

    fn kernel_square(&mut self) -> [AbMorphism; 3] {
        FgabGen::kernel_square(self)
    }

    fn coin(&mut self) -> bool {
        self.rng.gen_bool(0.5)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_morphisms_are_well_defined_and_compose() {
        let mut g = FgabGen::new(7);
        for _ in 0..30 {
            let a = g.group();
            let b = g.group();
            let c = g.group();
            let f = g.morphism(&a, &b);
            let h = g.morphism(&b, &c);
            assert!(Fgab.compose(&h, &f).is_ok());
        }
    }

    #[test]
    fn unimodular_pairs_are_inverse() {
        let mut g = FgabGen::new(1);
        for n in 0..5 {
            let (u, v) = g.unimodular(n);
            assert_eq!(u.mul(&v), IntMatrix::identity(n));
        }
    }

    #[test]
    fn generated_chains_compose_to_zero() {
        let mut g = FgabGen::new(3);
        for exact in [true, false] {
            for _ in 0..10 {
                let (f, h) = g.chain(exact);
                assert!(Fgab.is_zero(&Fgab.compose(&h, &f).unwrap()));
                assert!(Fgab.is_inflation(&f));
                assert!(Fgab.is_deflation(&h));
            }
        }
    }

    #[test]
    fn generated_diagrams_satisfy_their_hypotheses() {
        let mut g = FgabGen::with_bounds(11, 4, 5);
        for _ in 0..10 {
            g.snake_diagram().validate(&Fgab).unwrap();
            let m = g.snake_morphism();
            m.source.validate(&Fgab).unwrap();
            m.target.validate(&Fgab).unwrap();
            g.grid().check_commutes(&Fgab).unwrap();
            let [phi2, phi2_prime, f2] = g.kernel_square();
            assert!(Fgab.equal(&Fgab.compose(&phi2_prime, &f2).unwrap(), &phi2));
            g.complex_ses(0, 4).validate(&Fgab).unwrap();
        }
    }
}
