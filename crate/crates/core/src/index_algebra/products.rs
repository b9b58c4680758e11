use super::{Index, IndexCombination, Letter, LinComb, Word, WordCombination};

/// Harmonic (stuffle) product of two indices.
///
/// Computed over prefix pairs with the right-end recursion
/// `(u,a)*(v,b) = ((u,a)*v, b) + (u*(v,b), a) + (u*v, a+b)`.
pub fn harmonic_product_indices(u: &Index, v: &Index) -> IndexCombination {
    let (a, b) = (u.parts(), v.parts());
    prefix_table(a.len(), b.len(), |i| Index::from_parts_unchecked(a[..i].to_vec()), |j| {
        Index::from_parts_unchecked(b[..j].to_vec())
    }, |prev, cur, i, j| {
        let mut out = IndexCombination::zero();
        append_into(&mut out, &cur[j - 1], |k| k.with_pushed(b[j - 1]));
        append_into(&mut out, &prev[j], |k| k.with_pushed(a[i - 1]));
        append_into(&mut out, &prev[j - 1], |k| k.with_pushed(a[i - 1] + b[j - 1]));
        out
    })
}

/// Shuffle product of two words: all interleavings, counted with multiplicity.
pub fn shuffle_product_words(u: &Word, v: &Word) -> WordCombination {
    let (a, b) = (u.letters(), v.letters());
    prefix_table(a.len(), b.len(), |i| Word::new(a[..i].to_vec()), |j| Word::new(b[..j].to_vec()), |prev, cur, i, j| {
        let mut out = WordCombination::zero();
        append_into(&mut out, &cur[j - 1], |w| w.with_pushed(b[j - 1]));
        append_into(&mut out, &prev[j], |w| w.with_pushed(a[i - 1]));
        out
    })
}

pub fn harmonic_product(u: &IndexCombination, v: &IndexCombination) -> IndexCombination {
    u.bilinear(v, harmonic_product_indices)
}

pub fn shuffle_product(u: &WordCombination, v: &WordCombination) -> WordCombination {
    u.bilinear(v, shuffle_product_words)
}

/// `Y ⧢ w`, used by the shuffle regularization.
pub(crate) fn shuffle_with_y(w: &Word) -> WordCombination {
    shuffle_product_words(&Word::new(vec![Letter::Y]), w)
}

fn append_into<K: Ord + Clone>(out: &mut LinComb<K>, src: &LinComb<K>, f: impl Fn(&K) -> K) {
    for (k, c) in src.iter() {
        out.add_term(f(k), c.clone());
    }
}

/// Product of the full words, filled row by row over prefix lengths `(i, j)`.
fn prefix_table<K: Ord + Clone>(
    n: usize,
    m: usize,
    left: impl Fn(usize) -> K,
    right: impl Fn(usize) -> K,
    step: impl Fn(&[LinComb<K>], &[LinComb<K>], usize, usize) -> LinComb<K>,
) -> LinComb<K> {
    let mut prev: Vec<LinComb<K>> = (0..=m).map(|j| LinComb::basis(right(j))).collect();
    for i in 1..=n {
        let mut cur = Vec::with_capacity(m + 1);
        cur.push(LinComb::basis(left(i)));
        for j in 1..=m {
            let cell = step(&prev, &cur, i, j);
            cur.push(cell);
        }
        prev = cur;
    }
    prev.pop().unwrap()
}

#[cfg(test)]
fn total(c: &LinComb<impl Ord + Clone>) -> rug::Rational {
    c.iter().map(|(_, q)| q.clone()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rug::Rational;

    fn idx(s: &str) -> Index {
        s.parse().unwrap()
    }

    fn word(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn ic(pairs: &[(&str, i64)]) -> IndexCombination {
        IndexCombination::from_terms(pairs.iter().map(|(s, c)| (idx(s), Rational::from(*c))))
    }

    fn wc(pairs: &[(&str, i64)]) -> WordCombination {
        WordCombination::from_terms(pairs.iter().map(|(s, c)| (word(s), Rational::from(*c))))
    }

    #[test]
    fn stuffle_examples() {
        assert_eq!(
            harmonic_product_indices(&idx("2"), &idx("3")),
            ic(&[("2,3", 1), ("3,2", 1), ("5", 1)])
        );
        assert_eq!(harmonic_product_indices(&idx("1"), &idx("1")), ic(&[("1,1", 2), ("2", 1)]));
        assert_eq!(harmonic_product_indices(&Index::empty(), &idx("1,4")), ic(&[("1,4", 1)]));
        assert_eq!(
            harmonic_product_indices(&idx("1"), &idx("2,3")),
            ic(&[("1,2,3", 1), ("2,1,3", 1), ("2,3,1", 1), ("3,3", 1), ("2,4", 1)])
        );
    }

    #[test]
    fn shuffle_examples() {
        assert_eq!(shuffle_product_words(&word("y"), &word("y")), wc(&[("yy", 2)]));
        assert_eq!(shuffle_product_words(&word("x"), &word("y")), wc(&[("xy", 1), ("yx", 1)]));
        assert_eq!(
            shuffle_product_words(&word("xy"), &word("y")),
            wc(&[("yxy", 1), ("xyy", 2)])
        );
        assert_eq!(total(&shuffle_product_words(&word("xxy"), &word("xy"))), 10);
    }

    fn arb_index() -> impl Strategy<Value = Index> {
        prop::collection::vec(1u32..4, 0..4).prop_map(|v| Index::new(v).unwrap())
    }

    fn arb_word() -> impl Strategy<Value = Word> {
        prop::collection::vec(prop::bool::ANY, 0..5)
            .prop_map(|v| Word::new(v.into_iter().map(|b| if b { Letter::X } else { Letter::Y }).collect()))
    }

    fn arb_index_comb() -> impl Strategy<Value = IndexCombination> {
        prop::collection::vec((arb_index(), -3i64..4), 1..3)
            .prop_map(|v| IndexCombination::from_terms(v.into_iter().map(|(k, c)| (k, Rational::from(c)))))
    }

    fn arb_word_comb() -> impl Strategy<Value = WordCombination> {
        prop::collection::vec((arb_word(), -3i64..4), 1..3)
            .prop_map(|v| WordCombination::from_terms(v.into_iter().map(|(k, c)| (k, Rational::from(c)))))
    }

    /// Truncated nested sum over `0 < m_1 < ... < m_r <= n`, exactly.
    fn partial_sum(k: &Index, n: u64) -> Rational {
        let mut s = vec![Rational::new(); k.depth() + 1];
        s[0] = Rational::from(1);
        for m in 1..=n {
            for j in (1..=k.depth()).rev() {
                let term = Rational::from((1, rug::Integer::from(rug::Integer::u_pow_u(m as u32, k.parts()[j - 1]))));
                let add = Rational::from(&s[j - 1] * &term);
                s[j] += add;
            }
        }
        s[k.depth()].clone()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn stuffle_commutative_associative(a in arb_index_comb(), b in arb_index_comb(), c in arb_index_comb()) {
            prop_assert_eq!(harmonic_product(&a, &b), harmonic_product(&b, &a));
            prop_assert_eq!(
                harmonic_product(&harmonic_product(&a, &b), &c),
                harmonic_product(&a, &harmonic_product(&b, &c))
            );
        }

        #[test]
        fn shuffle_commutative_associative(a in arb_word_comb(), b in arb_word_comb(), c in arb_word_comb()) {
            prop_assert_eq!(shuffle_product(&a, &b), shuffle_product(&b, &a));
            prop_assert_eq!(
                shuffle_product(&shuffle_product(&a, &b), &c),
                shuffle_product(&a, &shuffle_product(&b, &c))
            );
        }

        #[test]
        fn shuffle_length_count(a in arb_word(), b in arb_word()) {
            let n = (a.len() + b.len()) as u32;
            prop_assert_eq!(total(&shuffle_product_words(&a, &b)), crate::ring::binomial(n, a.len() as u32));
        }

        #[test]
        fn stuffle_is_exact_on_partial_sums(
            u in prop::collection::vec(1u32..4, 1..3),
            v in prop::collection::vec(1u32..4, 1..3),
            n in 1u64..9,
        ) {
            let (u, v) = (Index::new(u).unwrap(), Index::new(v).unwrap());
            let lhs = partial_sum(&u, n) * partial_sum(&v, n);
            let rhs: Rational = harmonic_product_indices(&u, &v)
                .iter()
                .map(|(k, c)| c * partial_sum(k, n))
                .sum();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
