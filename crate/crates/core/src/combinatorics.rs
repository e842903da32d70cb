//! Small counting helpers shared by the exhaustive searches.

use std::ops::ControlFlow;

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = match acc.checked_mul((n - i) as u128) {
            Some(x) => x / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Visits every `k`-subset of `items` in lexicographic order of positions.
/// The callback sees the chosen elements in ascending position order.
pub fn for_each_combination<T: Copy, B>(
    items: &[T],
    k: usize,
    mut f: impl FnMut(&[T]) -> ControlFlow<B>,
) -> ControlFlow<B> {
    if k > items.len() {
        return ControlFlow::Continue(());
    }
    let mut idx: Vec<usize> = (0..k).collect();
    let mut chosen: Vec<T> = idx.iter().map(|&i| items[i]).collect();
    loop {
        f(&chosen)?;
        // advance to the next index vector
        let mut i = k;
        loop {
            if i == 0 {
                return ControlFlow::Continue(());
            }
            i -= 1;
            if idx[i] != i + items.len() - k {
                break;
            }
        }
        idx[i] += 1;
        chosen[i] = items[idx[i]];
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
            chosen[j] = items[idx[j]];
        }
    }
}
