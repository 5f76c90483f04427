//! Small internal helpers shared across modules.

/// Visit every size-`t` subset of `[n]` in lexicographic order.
pub(crate) fn for_each_combination(n: usize, t: usize, f: &mut dyn FnMut(&[usize])) {
    if t > n {
        return;
    }
    let mut idx: Vec<usize> = (0..t).collect();
    loop {
        f(&idx);
        // advance to the next combination
        let mut i = t;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - t {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..t {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// All size-`t` subsets of `[n]` in lexicographic order.
pub(crate) fn combinations(n: usize, t: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_combination(n, t, &mut |c| out.push(c.to_vec()));
    out
}

/// 2-adic valuation and odd part.
pub(crate) fn two_adic(n: usize) -> (u32, usize) {
    debug_assert!(n > 0);
    let v = n.trailing_zeros();
    (v, n >> v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_count_and_order() {
        let cs = combinations(5, 3);
        assert_eq!(cs.len(), 10);
        assert_eq!(cs[0], vec![0, 1, 2]);
        assert_eq!(cs[9], vec![2, 3, 4]);
        let mut sorted = cs.clone();
        sorted.sort();
        assert_eq!(cs, sorted);
    }

    #[test]
    fn combinations_edge_cases() {
        assert_eq!(combinations(3, 0).len(), 1);
        assert_eq!(combinations(2, 3).len(), 0);
        assert_eq!(combinations(4, 4), vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn two_adic_split() {
        assert_eq!(two_adic(12), (2, 3));
        assert_eq!(two_adic(32), (5, 1));
        assert_eq!(two_adic(7), (0, 7));
    }
}
