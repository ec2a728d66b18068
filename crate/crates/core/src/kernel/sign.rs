//! Koszul signs for permuting graded tensor factors.

/// Sign of reordering tensor factors of the given degrees.
///
/// `perm` lists the original indices in their new order. Every pair of
/// factors whose relative order flips contributes `(-1)^(deg_a * deg_b)`.
pub fn koszul_sign(degrees: &[i64], perm: &[usize]) -> i32 {
    debug_assert_eq!(degrees.len(), perm.len());
    let odd: Vec<bool> = perm.iter().map(|&i| degrees[i].rem_euclid(2) == 1).collect();
    let mut flips = 0usize;
    for a in 0..perm.len() {
        if !odd[a] {
            continue;
        }
        for b in a + 1..perm.len() {
            if odd[b] && perm[a] > perm[b] {
                flips += 1;
            }
        }
    }
    if flips.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Sign of sorting a sequence of `(key, odd)` pairs into ascending key order.
pub(crate) fn sort_sign<K: Ord>(seq: &[(K, bool)]) -> i32 {
    let mut flips = 0usize;
    for a in 0..seq.len() {
        if !seq[a].1 {
            continue;
        }
        for b in a + 1..seq.len() {
            if seq[b].1 && seq[a].0 > seq[b].0 {
                flips += 1;
            }
        }
    }
    if flips.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_cases() {
        assert_eq!(koszul_sign(&[1, 1], &[0, 1]), 1);
        assert_eq!(koszul_sign(&[1, 1], &[1, 0]), -1);
        assert_eq!(koszul_sign(&[2, 3], &[1, 0]), 1);
        assert_eq!(koszul_sign(&[1, 2], &[1, 0]), 1);
        assert_eq!(koszul_sign(&[1, 1, 1], &[2, 1, 0]), -1);
    }

    fn perm_strategy(n: usize) -> impl Strategy<Value = Vec<usize>> {
        Just((0..n).collect::<Vec<_>>()).prop_shuffle()
    }

    proptest! {
        #[test]
        fn homomorphism(
            degrees in proptest::collection::vec(-3i64..4, 6),
            p in perm_strategy(6),
            q in perm_strategy(6),
        ) {
            // Apply p, then q to the already permuted sequence.
            let after_p: Vec<i64> = p.iter().map(|&i| degrees[i]).collect();
            let composite: Vec<usize> = q.iter().map(|&i| p[i]).collect();
            prop_assert_eq!(
                koszul_sign(&degrees, &composite),
                koszul_sign(&degrees, &p) * koszul_sign(&after_p, &q)
            );
        }

        #[test]
        fn even_degrees_never_sign(
            half in proptest::collection::vec(-3i64..4, 5),
            p in perm_strategy(5),
        ) {
            let degrees: Vec<i64> = half.iter().map(|d| 2 * d).collect();
            prop_assert_eq!(koszul_sign(&degrees, &p), 1);
        }
    }
}
