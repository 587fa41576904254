//! Invariants of the abelian group instance on seeded random data. Group
//! invariants are compared against an independent `i128` Smith form.

#[path = "support/oracle.rs"]
mod oracle;

use exactcat::axioms::{verify_sampled, Axiom};
use exactcat::engine::grid::{full_three_by_three, three_by_three_dual};
use exactcat::engine::snake::snake;
use exactcat::gen::FgabGen;
use exactcat::hom::HomComplex;
use exactcat::{AbMorphism, Category, CategoryExt, Fgab, FpAbelianGroup};
use proptest::prelude::*;

fn invariants(g: &FpAbelianGroup) -> (usize, Vec<i128>) {
    let inv = g.invariants();
    (inv.free_rank, inv.torsion.iter().map(|d| i128::try_from(d).unwrap()).collect())
}

fn oracle_invariants(g: &FpAbelianGroup) -> (usize, Vec<i128>) {
    oracle::quotient(g.gens(), &oracle::from_int_matrix(g.relations()))
}

/// `B / im f` straight from the matrices.
fn oracle_cokernel(f: &AbMorphism) -> (usize, Vec<i128>) {
    let n = f.target().gens();
    let rel = oracle::from_int_matrix(f.target().relations());
    let m = oracle::from_int_matrix(f.matrix());
    oracle::quotient(n, &oracle::hstack(n, &[&rel, &m]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn presentations_agree_with_the_oracle(seed in any::<u64>()) {
        let mut gen = FgabGen::new(seed);
        let g = gen.group();
        prop_assert_eq!(invariants(&g), oracle_invariants(&g));
        let (h, iso) = gen.scramble(&g);
        prop_assert_eq!(invariants(&h), invariants(&g));
        prop_assert!(Fgab.is_iso(&iso));
        let (c, to_c) = Fgab.canonical_form(&h);
        prop_assert!(c.is_canonical());
        prop_assert!(Fgab.is_iso(&to_c));
    }

    #[test]
    fn cokernels_match_the_oracle(seed in any::<u64>()) {
        let mut gen = FgabGen::new(seed);
        let (a, b) = (gen.group(), gen.group());
        let f = gen.morphism(&a, &b);
        let c = Fgab.cokernel(&f).unwrap();
        prop_assert_eq!(invariants(&c.object), oracle_cokernel(&f));
    }

    #[test]
    fn factorizations_are_admissible(seed in any::<u64>()) {
        let mut gen = FgabGen::new(seed);
        let (a, b) = (gen.group(), gen.group());
        let f = gen.morphism(&a, &b);
        let fac = Fgab.factorize(&f);
        prop_assert!(Fgab.equal(&Fgab.compose(&fac.inflation_part, &fac.deflation_part).unwrap(), &f));
        prop_assert!(Fgab.is_deflation(&fac.deflation_part));
        prop_assert!(Fgab.check_short_exact(&fac.kernel.inclusion, &fac.deflation_part).unwrap().is_exact());
        prop_assert!(Fgab.check_short_exact(&fac.inflation_part, &fac.cokernel.projection).unwrap().is_exact());
    }

    #[test]
    fn composition_is_associative(seed in any::<u64>()) {
        let mut gen = FgabGen::new(seed);
        let objs: Vec<FpAbelianGroup> = (0..4).map(|_| gen.group()).collect();
        let f = gen.morphism(&objs[0], &objs[1]);
        let g = gen.morphism(&objs[1], &objs[2]);
        let h = gen.morphism(&objs[2], &objs[3]);
        let left = Fgab.compose(&h, &Fgab.compose(&g, &f).unwrap()).unwrap();
        let right = Fgab.compose(&Fgab.compose(&h, &g).unwrap(), &f).unwrap();
        prop_assert!(Fgab.equal(&left, &right));
        prop_assert!(Fgab.equal(&Fgab.compose(&Fgab.identity(&objs[1]), &f).unwrap(), &f));
    }

    #[test]
    fn snake_is_deterministic(seed in any::<u64>()) {
        let d = FgabGen::new(seed).snake_diagram();
        let again = FgabGen::new(seed).snake_diagram();
        let (r, s) = (snake(&Fgab, &d).unwrap(), snake(&Fgab, &again).unwrap());
        prop_assert_eq!(r.delta.matrix(), s.delta.matrix());
        prop_assert_eq!(r.kernels[2].object.relations(), s.kernels[2].object.relations());
        prop_assert!(r.is_verified());
    }

    #[test]
    fn three_by_three_lemmas_on_quotient_grids(seed in any::<u64>()) {
        let grid = FgabGen::new(seed).grid();
        let dual = three_by_three_dual(&Fgab, &grid).unwrap();
        prop_assert!(dual.third_column_exact);
        prop_assert!(Fgab.is_iso(&dual.iso));
        let full = full_three_by_three(&Fgab, &grid).unwrap();
        prop_assert!(full.middle_row_exact);
    }

    #[test]
    fn hom_complexes_square_to_zero(seed in any::<u64>(), lo in -2i64..2, len in 1usize..4) {
        let mut gen = FgabGen::new(seed);
        let a = gen.free_complex(lo, len);
        let b = gen.free_complex(lo + 1, len);
        let hom = HomComplex::new(&a, &b).unwrap();
        prop_assert!(hom.d_squared_is_zero());
    }

    #[test]
    fn cohomology_euler_characteristic(seed in any::<u64>(), len in 1usize..6) {
        let c = FgabGen::new(seed).admissible_complex(0, len);
        let sign = |k: usize| if k.is_multiple_of(2) { 1 } else { -1 };
        let chi_objects: i64 = c.objects.iter().enumerate().map(|(k, o)| sign(k) * oracle_invariants(o).0 as i64).sum();
        let chi_h: i64 = (0..len)
            .map(|k| sign(k) * oracle_invariants(c.cohomology(&Fgab, k as i64).unwrap().object()).0 as i64)
            .sum();
        prop_assert_eq!(chi_objects, chi_h);
    }
}

#[test]
fn sampled_axioms_pass() {
    let report = verify_sampled(&Fgab, &mut FgabGen::new(7), &Axiom::ALL, 200);
    assert!(report.all_pass(), "{report}");
}
