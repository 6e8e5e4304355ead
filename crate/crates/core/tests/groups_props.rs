use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use proptest::prelude::*;

use rtkirby::groups::{
    abelianization, cyclic_canonical, cyclic_reduce, free_reduce, rs_double_cover, smith_normal_form_i64,
    tietze_simplify, todd_coxeter, CosetResult, Letter, OrientationChar, Presentation, Word,
};

const GENS: [&str; 4] = ["a", "b", "c", "d"];

fn word_over(n: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..n, prop::bool::ANY), 0..=max_len)
        .prop_map(|ls| Word::raw(ls.into_iter().map(|(g, inv)| Letter::new(GENS[g], inv)).collect()))
}

fn presentation() -> impl Strategy<Value = Presentation> {
    (1usize..=4).prop_flat_map(|n| {
        prop::collection::vec(word_over(n, 8), 0..=4)
            .prop_map(move |rels| Presentation::new(GENS[..n].iter().map(|g| g.to_string()).collect(), rels).unwrap())
    })
}

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..=6, c), r))
}

fn det(m: &[Vec<i128>]) -> i128 {
    if m.len() == 1 {
        return m[0][0];
    }
    (0..m.len())
        .map(|j| {
            let minor: Vec<Vec<i128>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| *x).collect())
                .collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            s * m[0][j] * det(&minor)
        })
        .sum()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|s| s.count_ones() as usize == k)
        .map(|s| (0..n).filter(|i| s >> i & 1 == 1).collect())
        .collect()
}

/// Invariant factors as quotients of successive gcds of k×k minors.
fn determinantal_oracle(m: &[Vec<i64>]) -> Vec<BigInt> {
    let (rows, cols) = (m.len(), m[0].len());
    let n = rows.min(cols);
    let mut prev = BigInt::from(1);
    let mut out = Vec::new();
    for k in 1..=n {
        let mut g = BigInt::zero();
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let sub: Vec<Vec<i128>> = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c] as i128).collect()).collect();
                g = g.gcd(&BigInt::from(det(&sub)));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out.resize(n, BigInt::zero());
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn snf_matches_determinantal_divisors(m in matrix()) {
        let d = smith_normal_form_i64(&m);
        prop_assert_eq!(&d, &determinantal_oracle(&m));
        for w in d.windows(2) {
            prop_assert!(w[1].is_zero() || (!w[0].is_zero() && (&w[1] % &w[0]).is_zero()));
        }
    }

    #[test]
    fn free_reduce_is_idempotent(w in word_over(3, 16)) {
        let r = free_reduce(&w);
        prop_assert_eq!(free_reduce(&r), r.clone());
        prop_assert!(r.letters().windows(2).all(|p| p[0] != p[1].inv()));
        prop_assert!(free_reduce(&w.mul(&w.inverse())).is_empty());
        prop_assert_eq!(w.inverse().inverse(), w);
    }

    #[test]
    fn words_print_and_parse(w in word_over(4, 12)) {
        let w = free_reduce(&w);
        prop_assert_eq!(Word::parse_tokens(&w.to_tokens()).unwrap(), w.clone());
        prop_assert_eq!(Word::parse_compact(&w.to_compact()).unwrap(), w);
    }

    #[test]
    fn cyclic_forms_are_rotation_invariant(w in word_over(3, 10), k in 0usize..10) {
        let r = cyclic_reduce(&w);
        if !r.is_empty() {
            prop_assert_eq!(cyclic_canonical(&r.rotate(k % r.len())), cyclic_canonical(&r));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn tietze_preserves_abelianization(p in presentation()) {
        let q = tietze_simplify(&p, 32);
        prop_assert_eq!(abelianization(&q), abelianization(&p));
        prop_assert!(q.generators.len() <= p.generators.len());
    }

    #[test]
    fn tietze_preserves_finite_orders(p in presentation()) {
        let before = todd_coxeter(&p, 2000);
        if let CosetResult::Order(n) = before {
            prop_assert_eq!(todd_coxeter(&tietze_simplify(&p, 32), 4000), CosetResult::Order(n));
        }
    }

    #[test]
    fn double_cover_halves_the_order(p in presentation(), mask in 1u8..16) {
        let n = p.generators.len();
        let eps = OrientationChar::new(p.generators.iter().enumerate().map(|(i, g)| (g.clone(), if mask >> i & 1 == 1 { -1 } else { 1 })));
        let Some(alpha) = p.generators.iter().find(|g| eps.of_gen(g) == Ok(-1)).cloned() else {
            return Ok(());
        };
        // make every relator lie in the kernel
        let rels: Vec<Word> = p.relators.iter().map(|r| {
            if eps.of_word(r) == Ok(1) { r.clone() } else { r.mul(&Word::gen(alpha.clone())) }
        }).collect();
        let p = Presentation::new(p.generators.clone(), rels).unwrap();
        let cover = rs_double_cover(&p, &eps, &alpha).unwrap();
        prop_assert_eq!(cover.generators.len(), 2 * n - 1);
        prop_assert_eq!(cover.relators.len(), 2 * p.relators.len());
        if let CosetResult::Order(k) = todd_coxeter(&p, 2000) {
            prop_assert_eq!(todd_coxeter(&cover, 4000), CosetResult::Order(k / 2));
        }
    }
}
