//! Randomised properties across the library.

use num_bigint::BigUint;
use proptest::prelude::*;
use proptest::sample::select;

use rs_recon::bounds::{
    ball_volume, levenshtein_n, radius_bound, rational, to_f64, triangular_identity_sides,
    RadiusMode,
};
use rs_recon::channel::{adversarial_core, sample_reads, ChannelConfig, GenMode};
use rs_recon::kv::{choose_interpolation_degree, kv_list_decode, list_size_bound, monomial_count};
use rs_recon::multiplicity::{cost_closed_form, kv_threshold_check};
use rs_recon::reconstruct::{
    brute_force_reconstruct, find_far_read, find_max_pair, reconstruct_core, reconstruct_two_reads,
    Outcome,
};
use rs_recon::{distance, Field, MultiplicityMatrix, ReadSet, RsCode, Symbol, Word};

const FIELDS: [u64; 5] = [5, 8, 13, 16, 17];

/// Codes small enough to enumerate (q^k ≤ 10⁴).
const SMALL_CODES: [(u64, usize, usize); 7] = [
    (5, 4, 2),
    (7, 6, 2),
    (7, 6, 3),
    (8, 7, 3),
    (11, 10, 3),
    (13, 12, 2),
    (16, 15, 2),
];

fn code(q: u64, n: usize, k: usize) -> RsCode {
    RsCode::with_default_points(Field::new(q).unwrap(), n, k).unwrap()
}

fn word(f: &Field, raw: &[u32]) -> Word {
    Word::new(raw.iter().map(|&i| f.element(i % f.q()).unwrap()).collect())
}

fn message(f: &Field, raw: &[u32], k: usize) -> Vec<Symbol> {
    (0..k).map(|i| f.element(raw[i] % f.q()).unwrap()).collect()
}

fn add_words(f: &Field, a: &Word, b: &Word) -> Word {
    Word::new(
        a.symbols()
            .iter()
            .zip(b.symbols())
            .map(|(&x, &y)| f.add(x, y))
            .collect(),
    )
}

/// Up to `count` distinct reads within `t` of `c`, each with a random
/// number of errors at random positions.
fn reads_around(f: &Field, c: &Word, t: usize, raw: &[(u32, u32, u32)]) -> Vec<Word> {
    let n = c.len();
    let q = f.q();
    let mut out: Vec<Word> = Vec::new();
    for (i, &(w, pos, val)) in raw.iter().enumerate() {
        let mut v = c.clone();
        let weight = w as usize % (t + 1);
        for e in 0..weight {
            let j = (pos as usize + e * 7 + i) % n;
            let old = c.symbols()[j].index();
            let new = (old + 1 + (val + e as u32) % (q - 1)) % q;
            v.symbols_mut()[j] = f.element(new).unwrap();
        }
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

fn ordered_pairwise(reads: &[Word]) -> BigUint {
    let mut s = 0usize;
    for a in reads {
        for b in reads {
            s += distance(a, b).unwrap();
        }
    }
    BigUint::from(s)
}

#[test]
fn canonical_ordering_round_trips() {
    for q in [
        2u64, 3, 4, 5, 8, 9, 16, 25, 27, 49, 64, 128, 243, 256, 65536,
    ] {
        let f = Field::new(q).unwrap();
        for i in 0..f.q() {
            assert_eq!(f.element(i).unwrap().index(), i);
        }
        let zero = f.element(0).unwrap();
        assert!(f.elements().all(|a| f.add(a, zero) == a));
        assert!(f.element(f.q()).is_err());
    }
}

#[test]
fn codes_are_mds() {
    for (q, n, k) in SMALL_CODES {
        let c = code(q, n, k);
        let min = c
            .codewords(10_000)
            .unwrap()
            .map(|(_, w)| w.weight())
            .filter(|&w| w > 0)
            .min()
            .unwrap();
        assert_eq!(min, n - k + 1, "[{n},{k}] GF({q})");
    }
}

#[test]
fn minimum_weight_message_reaches_d() {
    for (q, n, k) in SMALL_CODES.into_iter().chain([(17, 16, 5), (256, 200, 30)]) {
        let c = code(q, n, k);
        assert_eq!(c.encode(&c.min_weight_message()).unwrap().weight(), c.d());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50_000))]

    #[test]
    fn field_axioms(fi in 0..FIELDS.len(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = Field::new(FIELDS[fi]).unwrap();
        let [a, b, c] = [a, b, c].map(|x| f.element(x % f.q()).unwrap());
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), Symbol::ZERO);
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Symbol::ONE);
            prop_assert_eq!(f.mul(f.div(b, a).unwrap(), a), b);
        } else {
            prop_assert!(f.inv(a).is_err());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(5_000))]

    #[test]
    fn poly_eval_matches_term_sum(
        fi in 0..FIELDS.len(),
        coeffs in prop::collection::vec(any::<u32>(), 1..12),
        x in any::<u32>(),
    ) {
        let f = Field::new(FIELDS[fi]).unwrap();
        let cs: Vec<Symbol> = coeffs.iter().map(|&c| f.element(c % f.q()).unwrap()).collect();
        let x = f.element(x % f.q()).unwrap();
        let mut sum = Symbol::ZERO;
        for (i, &c) in cs.iter().enumerate() {
            sum = f.add(sum, f.mul(c, f.pow(x, i as u64)));
        }
        prop_assert_eq!(f.poly_eval(&cs, x).unwrap(), sum);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1_000))]

    #[test]
    fn encoding_is_linear(
        (q, n, k) in select(vec![(5u64, 4usize, 2usize), (8, 7, 3), (17, 16, 5), (64, 40, 10), (256, 255, 100)]),
        m1 in prop::collection::vec(any::<u32>(), 100),
        m2 in prop::collection::vec(any::<u32>(), 100),
    ) {
        let c = code(q, n, k);
        let f = c.field();
        let a = message(f, &m1, k);
        let b = message(f, &m2, k);
        let sum: Vec<Symbol> = a.iter().zip(&b).map(|(&x, &y)| f.add(x, y)).collect();
        let lhs = add_words(f, &c.encode(&a).unwrap(), &c.encode(&b).unwrap());
        prop_assert_eq!(lhs, c.encode(&sum).unwrap());
    }

    #[test]
    fn triangular_identity_holds(a in prop::collection::vec(1u64..=50, 1..=20)) {
        let (l, r) = triangular_identity_sides(&a).unwrap();
        prop_assert_eq!(l, r);
    }

    /// The radius-(ℓ−1) ball around the adversarial midpoint fits inside
    /// every intersection of two radius-t balls at distance d.
    #[test]
    fn small_ball_fits_in_intersection(n in 1usize..=40, q in 2u64..=32, d0 in 0usize..40, l0 in 0usize..40) {
        let d = 1 + 2 * (d0 % n.div_ceil(2));
        prop_assume!(d <= n && d >= 3);
        let e = (d - 1) / 2;
        let ell = 1 + l0 % e;
        prop_assume!(2 * ell < d);
        let t = e + ell;
        prop_assume!(t <= n);
        prop_assert!(ball_volume(q, ell - 1, n) <= levenshtein_n(n, q, t, d));
    }

    #[test]
    fn radius_bound_without_slack_is_johnson(n in 2usize..=300, k0 in 0usize..300, eps in 1i64..1000) {
        let k = 2 + k0 % (n - 1);
        let epsilon = rational(eps, 10_000);
        let j = to_f64(&radius_bound(n, k, 0, &epsilon, RadiusMode::Johnson).unwrap());
        let closed = 1.0 - ((k as f64 / n as f64) * (1.0 + eps as f64 / 10_000.0)).sqrt();
        prop_assert!((j - closed).abs() < 1e-9);
        for mode in [RadiusMode::Linear, RadiusMode::Quadratic] {
            let r = to_f64(&radius_bound(n, k, 0, &epsilon, mode).unwrap());
            prop_assert!((r - j).abs() < 1e-9);
        }
    }

    #[test]
    fn cost_falls_as_pairs_spread(n in 1usize..50, s in 2usize..20, mu in 1u32..5, p in 0usize..2000) {
        let pairwise = BigUint::from(2 * p);
        let wider = BigUint::from(2 * p + 2);
        if let (Ok(a), Ok(b)) = (
            cost_closed_form(n, s, mu, &pairwise),
            cost_closed_form(n, s, mu, &wider),
        ) {
            prop_assert!(b < a);
        }
    }

    #[test]
    fn interpolation_degree_is_minimal(c in 0u64..1_000_000, k in 2usize..40) {
        let plan = choose_interpolation_degree(&BigUint::from(c), k).unwrap();
        prop_assert_eq!(plan.basis.len() as u64, monomial_count(plan.delta, k - 1));
        prop_assert!(plan.basis.len() as u64 > c);
        if plan.delta > 0 {
            prop_assert!(monomial_count(plan.delta - 1, k - 1) <= c);
        }
        prop_assert!(plan.basis.iter().all(|&(a, b)| a + (k - 1) * b <= plan.delta));
        prop_assert_eq!(plan.y_cap, plan.delta / (k - 1));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    /// Matrix built from reads around a codeword: cost closed form, column
    /// sums, score identity and the transmitted codeword's score floor.
    #[test]
    fn matrix_identities(
        (q, n, k) in select(SMALL_CODES.to_vec()),
        m in prop::collection::vec(any::<u32>(), 3),
        raw in prop::collection::vec((any::<u32>(), any::<u32>(), any::<u32>()), 1..8),
        t0 in any::<usize>(),
        mu in 1u32..4,
        v in prop::collection::vec(any::<u32>(), 16),
    ) {
        let c = code(q, n, k);
        let f = c.field();
        let cw = c.encode(&message(f, &m, k)).unwrap();
        let t = t0 % (n + 1);
        let reads = reads_around(f, &cw, t, &raw);
        let mat = MultiplicityMatrix::from_reads(f, &reads, mu).unwrap();
        let closed = cost_closed_form(n, reads.len(), mu, &ordered_pairwise(&reads)).unwrap();
        prop_assert_eq!(mat.cost(), closed);
        for j in 0..n {
            prop_assert_eq!(mat.column_sum(j), mu as u64 * reads.len() as u64);
            prop_assert!(mat.column(j).len() <= reads.len());
        }
        let v = word(f, &v[..n]);
        let expect: usize = reads.iter().map(|y| n - distance(&v, y).unwrap()).sum();
        prop_assert_eq!(mat.score(&v).unwrap(), BigUint::from(mu as usize * expect));
        let floor = mu as usize * reads.len() * (n - t);
        prop_assert!(mat.score(&cw).unwrap() >= BigUint::from(floor));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    /// KV list decoding against exhaustive enumeration of the code.
    #[test]
    fn kv_list_contract(
        (q, n, k) in select(SMALL_CODES.to_vec()),
        m in prop::collection::vec(any::<u32>(), 3),
        raw in prop::collection::vec((any::<u32>(), any::<u32>(), any::<u32>()), 1..4),
        t0 in any::<usize>(),
        mu in 1u32..3,
    ) {
        let c = code(q, n, k);
        let f = c.field();
        let cw = c.encode(&message(f, &m, k)).unwrap();
        let t = t0 % (n - k + 1);
        let reads = reads_around(f, &cw, t, &raw);
        let mat = MultiplicityMatrix::from_reads(f, &reads, mu).unwrap();
        let list = kv_list_decode(&c, &mat).unwrap();

        // soundness: every listed message is a Y-root of Q
        for msg in &list.messages {
            prop_assert!(list.interpolant.compose_y(msg).is_empty());
        }
        for (msg, w) in list.messages.iter().zip(&list.codewords) {
            prop_assert_eq!(&c.encode(msg).unwrap(), w);
        }
        // completeness: every codeword above threshold is listed
        for (_, w) in c.codewords(10_000).unwrap() {
            let s = mat.score(&w).unwrap();
            if kv_threshold_check(&mat, k, &s).passes {
                prop_assert!(list.codewords.contains(&w));
            }
        }
        prop_assert!(BigUint::from(list.codewords.len()) <= list_size_bound(&mat.cost(), k));
        prop_assert!(list.interpolant.weighted_degree(k).unwrap() <= list.plan.delta);
        // Q vanishes with multiplicity m at every (α_j, δ)
        for (sym, j, mult) in mat.entries() {
            let shifted = list.interpolant.shift(c.alpha()[j], sym);
            prop_assert!(shifted.terms().all(|((a, b), _)| a + b >= mult as usize));
        }
        let again = kv_list_decode(&c, &mat).unwrap();
        prop_assert_eq!(again.codewords, list.codewords);
    }

    /// Two-read reconstruction agrees with brute force whenever the
    /// guaranteed score clears the threshold and the answer is unique.
    #[test]
    fn reconstruction_contract(
        (q, n, k) in select(SMALL_CODES.to_vec()),
        m in prop::collection::vec(any::<u32>(), 3),
        raw in prop::collection::vec((any::<u32>(), any::<u32>(), any::<u32>()), 2..12),
        t0 in any::<usize>(),
        mu in 1u32..3,
        pick in prop::collection::vec(any::<bool>(), 12),
    ) {
        let c = code(q, n, k);
        let f = c.field();
        let cw = c.encode(&message(f, &m, k)).unwrap();
        let t = t0 % (n - k + 1);
        let reads = reads_around(f, &cw, t, &raw);
        prop_assume!(reads.len() >= 2);
        let y = ReadSet::new(reads, t).unwrap();
        let brute = brute_force_reconstruct(&c, &y).unwrap();
        let unique = brute.outcome == Outcome::Decoded;

        let two = reconstruct_two_reads(&c, &y, mu).unwrap();
        if let Some(w) = &two.decoded {
            prop_assert!(y.consistent_with(w));
        }
        prop_assert!(two.filter_comparisons <= (n * y.len() * two.list_size) as u64);
        prop_assert_eq!(two.pair_comparisons, (n * (y.len() - 1)) as u64);
        if unique && two.guarantee_met {
            prop_assert_eq!(two.decoded.as_ref(), brute.decoded.as_ref());
            prop_assert_eq!(two.decoded.as_ref(), Some(&cw));
        }

        let subset: Vec<usize> = (0..y.len()).filter(|&i| pick[i]).collect();
        prop_assume!(!subset.is_empty());
        let core = reconstruct_core(&c, &y, &subset, mu).unwrap();
        if let Some(w) = &core.decoded {
            prop_assert!(y.consistent_with(w));
        }
        if unique && core.guarantee_met {
            prop_assert_eq!(core.decoded.as_ref(), Some(&cw));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1_000))]

    #[test]
    fn far_read_reaches_half_the_diameter(
        fi in 0..FIELDS.len(),
        n in 1usize..20,
        center in prop::collection::vec(any::<u32>(), 20),
        t0 in any::<usize>(),
        count in 2usize..40,
        seed in any::<u64>(),
    ) {
        let f = Field::new(FIELDS[fi]).unwrap();
        let c = word(&f, &center[..n]);
        let t = t0 % (n + 1);
        let Ok(y) = sample_reads(&f, &c, t, count, false, seed) else {
            return Ok(());
        };
        prop_assume!(y.len() >= 2);
        let diameter = y.max_pairwise_distance();
        let far = find_far_read(&y).unwrap();
        prop_assert!(2 * far.distance >= diameter);
        prop_assert_eq!(far.comparisons, (n * (y.len() - 1)) as u64);
        prop_assert_eq!(find_max_pair(&y).unwrap().distance, diameter);
        // channel invariants: distinct reads, all within t of the centre
        prop_assert!(y.consistent_with(&c));
        for (i, a) in y.reads().iter().enumerate() {
            prop_assert!(y.reads()[i + 1..].iter().all(|b| b != a));
        }
        let again = sample_reads(&f, &c, t, count, false, seed).unwrap();
        prop_assert_eq!(again.reads(), y.reads());
    }
}

#[test]
fn generated_sets_are_deterministic_and_valid() {
    let c = code(17, 16, 2);
    let cw = c
        .encode(&[Symbol::from_index(3), Symbol::from_index(5)])
        .unwrap();
    for mode in [GenMode::Random, GenMode::Witness] {
        for seed in 0..20 {
            for exact_t in [false, true] {
                let cfg = ChannelConfig {
                    code: c.clone(),
                    t: 11,
                    mode,
                    count: 12,
                    seed,
                    exact_t,
                };
                let a = cfg.generate(&cw).unwrap();
                assert_eq!(a.reads(), cfg.generate(&cw).unwrap().reads());
                assert!(a.consistent_with(&cw));
                if exact_t || mode == GenMode::Witness {
                    assert!(a.reads().iter().all(|r| distance(r, &cw).unwrap() == 11));
                }
            }
        }
    }
}

#[test]
fn adversarial_core_sits_in_both_balls() {
    for (q, n, k, t) in [
        (7u64, 6usize, 2usize, 3usize),
        (11, 8, 2, 5),
        (11, 10, 2, 7),
        (13, 12, 4, 6),
    ] {
        let c = code(q, n, k);
        let (x, y, core) = adversarial_core(&c, t).unwrap();
        let d = c.d();
        let ell = t - (d - 1) / 2;
        assert_eq!(distance(&x, &y).unwrap(), d);
        assert_eq!(BigUint::from(core.len()), ball_volume(q, ell - 1, n));
        assert!(BigUint::from(core.len()) <= levenshtein_n(n, q, t, d));
        for r in core.reads() {
            assert!(distance(r, &x).unwrap() <= t && distance(r, &y).unwrap() <= t);
        }
        assert_ne!(
            brute_force_reconstruct(&c, &core).unwrap().outcome,
            Outcome::Decoded
        );
    }
}
