use proptest::prelude::*;
use schubloc::coxeter::{WeylElem, WeylGroup};
use schubloc::extaffine::{ExtAffine, ExtAffineElem};
use schubloc::locaffine::AffineLoc;
use schubloc::locfinite::FlagLoc;
use schubloc::pipedream::{enumerate_pd, gtilde, is_bounded, is_symmetric_in_x, PipeDream};
use schubloc::ring::{parse_ratfun, LaurentPoly, Mono, RatFun, Var};
use schubloc::subword::{subword_sum, WeightScheme};
use std::sync::{Arc, OnceLock};

fn poly() -> impl Strategy<Value = LaurentPoly> {
    let vars = [Var::T(1), Var::T(2), Var::Y];
    prop::collection::vec((-3i64..=3, prop::array::uniform3(0u32..=2), 0u32..=1), 0..4).prop_map(move |terms| {
        terms.iter().fold(LaurentPoly::zero(), |acc, (c, e, inv_t1)| {
            let mut m = LaurentPoly::constant(*c);
            for (v, &k) in vars.iter().zip(e) {
                m = &m * &LaurentPoly::var(*v).pow(k);
            }
            if *inv_t1 == 1 {
                m = m.mul_mono(&Mono::var(Var::T(1)).inv());
            }
            &acc + &m
        })
    })
}

fn ratfun() -> impl Strategy<Value = RatFun> {
    (poly(), poly().prop_filter("nonzero", |d| !d.is_zero())).prop_map(|(n, d)| RatFun::new(n, d))
}

/// Strips right descents in the order picked by `picks`.
fn random_reduced_word(a: &ExtAffine, x: &ExtAffineElem, picks: &[usize]) -> (ExtAffineElem, Vec<usize>) {
    let mut x = x.clone();
    let mut rev = Vec::new();
    let mut p = picks.iter().cycle();
    loop {
        let d: Vec<usize> = (0..a.n_simple()).filter(|&i| a.has_right_descent(&x, i)).collect();
        if d.is_empty() {
            break;
        }
        let i = d[p.next().unwrap() % d.len()];
        x = a.rmul_s(&x, i);
        rev.push(i);
    }
    rev.reverse();
    (x, rev)
}

fn flag(ty: &str) -> &'static FlagLoc {
    static A2: OnceLock<FlagLoc> = OnceLock::new();
    static B2: OnceLock<FlagLoc> = OnceLock::new();
    let cell = if ty == "A2" { &A2 } else { &B2 };
    cell.get_or_init(|| FlagLoc::parse(ty).unwrap())
}

fn affine(ty: &str) -> &'static AffineLoc {
    static GL3: OnceLock<AffineLoc> = OnceLock::new();
    static A2: OnceLock<AffineLoc> = OnceLock::new();
    let cell = if ty == "GL3" { &GL3 } else { &A2 };
    cell.get_or_init(|| AffineLoc::new(Arc::new(ExtAffine::parse(ty).unwrap())))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ratfun_field_laws(a in ratfun(), b in ratfun(), c in ratfun()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !b.is_zero() {
            prop_assert_eq!(&(&a * &b) / &b, a.clone());
            prop_assert!((&b * &b.inv()).is_one());
        }
    }

    #[test]
    fn ratfun_parse_round_trip(a in ratfun()) {
        prop_assert_eq!(parse_ratfun(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn coxeter_words(word in prop::collection::vec(0usize..3, 0..12), ty in prop::sample::select(vec!["A3", "B3", "C3"])) {
        let g = WeylGroup::parse(ty).unwrap();
        let w = g.from_word(&word).unwrap();
        let l = g.length(w);
        prop_assert!(l <= word.len());
        prop_assert_eq!(l % 2, word.len() % 2);
        prop_assert_eq!(g.is_reduced(&word), l == word.len());
        let rev: Vec<usize> = word.iter().rev().copied().collect();
        prop_assert_eq!(g.from_word(&rev).unwrap(), g.inverse(w));
        prop_assert!(g.is_reduced(&g.word_vec(w)));
        prop_assert_eq!(g.from_word(&g.word_vec(w)).unwrap(), w);
        prop_assert!(g.bruhat_leq(WeylElem::ID, w) && g.bruhat_leq(w, g.longest()));
    }

    #[test]
    fn smc_word_independence(word in prop::collection::vec(0usize..2, 0..7), b2 in any::<bool>()) {
        let l = flag(if b2 { "B2" } else { "A2" });
        let g = &l.g;
        let scheme = WeightScheme::smc(&g.datum);
        let w = g.from_word(&word).unwrap();
        for u in g.elements() {
            prop_assert_eq!(&subword_sum(g, &word, u, &scheme, WeylElem::ID).unwrap(), l.smc(u, w));
        }
    }

    #[test]
    fn factorization_round_trip(class in -2i64..=2, word in prop::collection::vec(0usize..3, 0..10), picks in prop::collection::vec(0usize..3, 1..6)) {
        let a = ExtAffine::parse("GL3").unwrap();
        let x = a.from_factorization(&a.omega_rep(class), &word);
        let (omega, red) = a.reduced_factorization(&x);
        prop_assert_eq!(a.length(&omega), 0);
        prop_assert_eq!(red.len(), a.length(&x));
        prop_assert_eq!(a.from_factorization(&omega, &red), x.clone());
        let (omega2, red2) = random_reduced_word(&a, &x, &picks);
        prop_assert_eq!(&omega2, &omega);
        prop_assert_eq!(a.from_factorization(&omega2, &red2), x.clone());
        prop_assert_eq!(a.from_window(&a.window(&x).unwrap()).unwrap(), x);
    }

    #[test]
    fn affine_vector_word_independence(ty in prop::sample::select(vec!["GL3", "A2"]), word in prop::collection::vec(0usize..3, 0..7), picks in prop::collection::vec(0usize..3, 1..6)) {
        let l = affine(ty);
        let x = l.a.from_factorization(&l.a.one(), &word);
        let (omega, red) = random_reduced_word(&l.a, &x, &picks);
        prop_assert_eq!(&l.vector_along(&omega, &red).values, &l.vector(&x).values);
    }

    #[test]
    fn tilings_trace_to_bijections(n in 2usize..=4, k in 1usize..=2, seed in any::<u64>()) {
        let pd = PipeDream::from_mask(n, k, seed & ((1u64 << (k * n)) - 1));
        let tr = pd.trace().unwrap();
        let ni = n as i64;
        let mut res: Vec<i64> = tr.window.iter().map(|f| (f - 1).rem_euclid(ni)).collect();
        res.sort_unstable();
        prop_assert_eq!(res, (0..ni).collect::<Vec<_>>());
        if is_bounded(&tr.window, k) {
            prop_assert!(enumerate_pd(&tr.window, k).unwrap().contains(&pd));
        }
    }

    #[test]
    fn gtilde_is_x_symmetric(n in 2usize..=4, seed in any::<u64>()) {
        let k = 2;
        let pd = PipeDream::from_mask(n, k, seed & ((1u64 << (k * n)) - 1));
        let w = pd.trace().unwrap().window;
        prop_assume!(is_bounded(&w, k));
        prop_assert!(is_symmetric_in_x(&gtilde(&w, k).unwrap(), k));
    }
}
