use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use torelli_sieve::finite::{bfs_closure, cayley_spectral_gap, group_order, standard_generators, uniform_sample, Budget, FiniteGroupSpec};
use torelli_sieve::poly::{factor_mod_p, Certificate, Factorizer};
use torelli_sieve::prym::PrymModule;
use torelli_sieve::surface::{homology_matrix, humphries_letters, Letter, McgWord, SurfaceModel};
use torelli_sieve::walk::{
    classify_pa_proxy, run_walks, walk_indices, walk_matrix, AdmissibleSet, Classifier, ClassifierSet, Representation,
    WalkExperiment,
};
use torelli_sieve::{IntMatrix, IntPolynomial, ModPolynomial, SymplecticForm};

fn mcg_word(genus: usize) -> impl Strategy<Value = McgWord> {
    let letters = humphries_letters(genus);
    prop::collection::vec((0..letters.len(), any::<bool>()), 0..12).prop_map(move |picks| {
        McgWord::new(
            picks
                .into_iter()
                .map(|(i, inv)| if inv { letters[i].inv() } else { letters[i] })
                .collect::<Vec<Letter>>(),
        )
    })
}

fn torelli_word(genus: usize) -> impl Strategy<Value = McgWord> {
    let words = PrymModule::new(genus).unwrap().standard_words();
    prop::collection::vec((0..words.len(), any::<bool>()), 0..8).prop_map(move |picks| {
        picks
            .into_iter()
            .fold(McgWord::empty(), |acc, (i, inv)| acc.concat(&if inv { words[i].inverse() } else { words[i].clone() }))
    })
}

fn monic_poly(max_deg: usize, bound: i64) -> impl Strategy<Value = IntPolynomial> {
    (1..=max_deg).prop_flat_map(move |d| {
        prop::collection::vec(-bound..=bound, d).prop_map(|mut c| {
            c.push(1);
            IntPolynomial::from_i64(&c)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn symplectic_products_stay_symplectic(u in mcg_word(3), v in mcg_word(3)) {
        let s = SurfaceModel::new(3).unwrap();
        let m = homology_matrix(&u.concat(&v), &s).unwrap();
        prop_assert!(m.is_symplectic(s.form()).unwrap());
        prop_assert!(m.char_poly().is_self_reciprocal());
    }

    #[test]
    fn homology_is_a_homomorphism((g, u, v) in (2usize..=4).prop_flat_map(|g| (Just(g), mcg_word(g), mcg_word(g)))) {
        let s = SurfaceModel::new(g).unwrap();
        let muv = homology_matrix(&u.concat(&v), &s).unwrap();
        let prod = homology_matrix(&u, &s).unwrap().multiply(&homology_matrix(&v, &s).unwrap()).unwrap();
        prop_assert_eq!(muv, prod);
        prop_assert!(homology_matrix(&u.concat(&u.inverse()), &s).unwrap().is_identity());
    }

    #[test]
    fn inverse_of_product(u in mcg_word(3), v in mcg_word(3)) {
        let s = SurfaceModel::new(3).unwrap();
        let a = homology_matrix(&u, &s).unwrap();
        let b = homology_matrix(&v, &s).unwrap();
        let lhs = a.multiply(&b).unwrap().inverse().unwrap();
        let rhs = b.inverse().unwrap().multiply(&a.inverse().unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reduction_commutes_with_products(u in mcg_word(2), v in mcg_word(2), pi in 0usize..4) {
        let p = [2u64, 3, 5, 7][pi];
        let s = SurfaceModel::new(2).unwrap();
        let a = homology_matrix(&u, &s).unwrap();
        let b = homology_matrix(&v, &s).unwrap();
        let lhs = a.multiply(&b).unwrap().reduce_mod(p).unwrap();
        let rhs = a.reduce_mod(p).unwrap().multiply(&b.reduce_mod(p).unwrap()).unwrap();
        prop_assert!(lhs.is_symplectic());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn prym_is_a_homomorphism(g in 3usize..=4, seed in any::<u64>()) {
        let m = PrymModule::new(g).unwrap();
        let words = m.standard_words();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pick = |rng: &mut ChaCha8Rng| {
            use rand::Rng;
            (0..rng.random_range(0..5)).fold(McgWord::empty(), |acc, _| {
                let w = &words[rng.random_range(0..words.len())];
                acc.concat(&if rng.random::<bool>() { w.inverse() } else { w.clone() })
            })
        };
        let u = pick(&mut rng);
        let v = pick(&mut rng);
        let lhs = m.rho_word(&u.concat(&v)).unwrap();
        let rhs = m.rho_word(&u).unwrap().multiply(&m.rho_word(&v).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn prym_images_are_symplectic(w in torelli_word(3)) {
        let m = PrymModule::new(3).unwrap();
        let img = m.rho_word(&w).unwrap();
        prop_assert!(img.matrix().is_symplectic(m.form()).unwrap());
    }

    #[test]
    fn certificates_are_sound(f in monic_poly(6, 20)) {
        let fz = Factorizer::default();
        let factors = fz.factor_q(&f).unwrap();
        let irreducible = factors.len() == 1 && factors[0].1 == 1;
        if let Certificate::IrreducibleModP(_) = fz.certificate(&f).unwrap() {
            prop_assert!(irreducible);
        }
        prop_assert_eq!(fz.is_reducible_q(&f).unwrap(), !irreducible);
        let product = factors.iter().fold(IntPolynomial::one(), |acc, (g, e)| acc.mul(&g.pow(*e)));
        prop_assert_eq!(product, f);
    }

    #[test]
    fn products_are_never_certified(f in monic_poly(3, 30), g in monic_poly(3, 30)) {
        let fz = Factorizer::default();
        let h = f.mul(&g);
        prop_assert!(!matches!(fz.certificate(&h).unwrap(), Certificate::IrreducibleModP(_)));
        prop_assert!(fz.is_reducible_q(&h).unwrap());
    }

    #[test]
    fn reflection_preserves_reducibility(f in monic_poly(6, 15)) {
        let fz = Factorizer::default();
        let r = f.reflect();
        let r = if r.is_monic() { r } else { r.neg() };
        prop_assert_eq!(fz.is_reducible_q(&f).unwrap(), fz.is_reducible_q(&r).unwrap());
    }

    #[test]
    fn classifier_sets_are_monotone(w in mcg_word(3), extra in 0usize..3) {
        let s = SurfaceModel::new(3).unwrap();
        let m = homology_matrix(&w, &s).unwrap();
        let small = ClassifierSet::only(Classifier::ALL[extra]);
        let fz = Factorizer::default();
        let fired_small = classify_pa_proxy(&m, small, &fz).unwrap();
        let fired_all = classify_pa_proxy(&m, ClassifierSet::all(), &fz).unwrap();
        prop_assert!(fired_small.is_subset(fired_all));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn mod_p_factorizations_multiply_back(
        pi in 0usize..4,
        coeffs in prop::collection::vec(0u64..1000, 1..10),
        seed in any::<u64>(),
    ) {
        let p = [2u64, 3, 5, 7][pi];
        let f = ModPolynomial::new(coeffs, p);
        prop_assume!(f.degree().is_some());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fac = factor_mod_p(&f, &mut rng).unwrap();
        prop_assert_eq!(fac.product(p), f);
        for (g, e) in &fac.factors {
            prop_assert!(*e >= 1);
            prop_assert!(g.is_monic() && g.is_irreducible());
        }
    }
}

#[test]
fn walk_steps_match_direct_products() {
    for rep in [Representation::Homology, Representation::Prym] {
        let s = AdmissibleSet::standard(rep, 3).unwrap();
        for w in 0..100 {
            let k = 1 + (w as usize % 40);
            let idx = walk_indices(99, k, w, s.len());
            let direct = idx.iter().fold(IntMatrix::identity(s.dim().unwrap()), |acc, &i| acc.multiply(&s.elements()[i]).unwrap());
            assert_eq!(walk_matrix(&s, &idx).unwrap(), direct);
        }
    }
}

#[test]
fn walk_estimates_ignore_worker_count() {
    let s = AdmissibleSet::standard(Representation::Prym, 3).unwrap();
    let e = WalkExperiment::new(s, vec![5, 10, 15, 20, 25], 300, 5, ClassifierSet::only(Classifier::Reducible)).unwrap();
    let runs: Vec<_> = [1, 2, 3]
        .iter()
        .map(|&t| rayon::ThreadPoolBuilder::new().num_threads(t).build().unwrap().install(|| run_walks(&e).unwrap()))
        .collect();
    assert_eq!(runs[0], runs[1]);
    assert_eq!(runs[0], runs[2]);
}

#[test]
fn enlarging_classifiers_never_lowers_proportions() {
    let s = AdmissibleSet::standard(Representation::Homology, 3).unwrap();
    let run = |c| run_walks(&WalkExperiment::new(s.clone(), vec![5, 15, 25, 35], 300, 8, c).unwrap()).unwrap();
    let chain = [
        ClassifierSet::empty(),
        ClassifierSet::only(Classifier::PowerSubstitution),
        ClassifierSet::only(Classifier::PowerSubstitution).with(Classifier::RootOfUnity),
        ClassifierSet::all(),
    ];
    let results: Vec<_> = chain.iter().map(|&c| run(c)).collect();
    for pair in results.windows(2) {
        for (a, b) in pair[0].rows.iter().zip(&pair[1].rows) {
            assert!(a.proportion <= b.proportion, "k={} {} > {}", a.k, a.proportion, b.proportion);
        }
    }
}

#[test]
fn closure_sizes_match_order_formula() {
    for (n, p) in [(1, 2), (1, 3), (1, 5), (1, 7), (1, 11), (1, 13), (2, 2), (2, 3)] {
        for projective in [false, true] {
            let spec = FiniteGroupSpec::new(n, p, projective).unwrap();
            let closure = bfs_closure(&standard_generators(&spec), &spec, &Budget::default()).unwrap();
            assert_eq!(BigInt::from(closure.len()), BigInt::from(group_order(&spec)), "{spec}");
        }
    }
}

#[test]
fn uniform_samples_are_group_elements() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for (n, p) in [(1, 2), (2, 3), (2, 5), (3, 3), (3, 7)] {
        let spec = FiniteGroupSpec::new(n, p, false).unwrap();
        assert!((0..500).all(|_| uniform_sample(&spec, &mut rng).is_symplectic()));
    }
}

#[test]
fn spectral_gap_is_conjugation_invariant() {
    let spec = FiniteGroupSpec::new(1, 7, false).unwrap();
    let gens: Vec<_> = standard_generators(&spec).into_iter().flat_map(|g| [g.inverse().unwrap(), g]).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let h = uniform_sample(&spec, &mut rng);
    let hi = h.inverse().unwrap();
    let conj: Vec<_> = gens.iter().map(|g| h.multiply(g).unwrap().multiply(&hi).unwrap()).collect();
    let a = cayley_spectral_gap(&gens, &spec, &Budget::default(), 1e-9).unwrap();
    let b = cayley_spectral_gap(&conj, &spec, &Budget::default(), 1e-9).unwrap();
    assert_eq!(a.nodes, 336);
    assert!((a.gap - b.gap).abs() < 1e-6, "{} vs {}", a.gap, b.gap);
}

#[test]
fn transvections_preserve_the_form() {
    let form = SymplecticForm::standard(6).unwrap();
    let v: Vec<BigInt> = [1, -2, 0, 3, 5, -1].iter().map(|&x| BigInt::from(x)).collect();
    let t = form.transvection(&v).unwrap();
    assert!(t.is_symplectic(&form).unwrap());
    assert!(!t.is_identity());
}
