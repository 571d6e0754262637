//! Square (`yy`) detection.
//!
//! The whole-word test and the endpoint map use a Main–Lorentz style
//! divide and conquer: after recursing into both halves, every square that
//! crosses the split is found in O(n) with Z-function extensions, giving
//! O(n log n) letter comparisons overall. The square-suffix test reverses
//! the word and reads one Z array. All routines only compare letters, so the
//! alphabet may be unbounded.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use thiserror::Error;

use crate::word::Letter;

/// Default size limit for [`naive_square_scan`].
pub const ORACLE_CAP: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SquareError {
    #[error("word of length {len} exceeds the oracle cap of {cap}")]
    OracleCap { len: usize, cap: usize },
}

/// The square `w[start .. start + 2 * period]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SquareOccurrence {
    pub start: usize,
    pub period: usize,
}

impl SquareOccurrence {
    /// Index of the last letter of the square.
    pub fn end(&self) -> usize {
        self.start + 2 * self.period - 1
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SquareReport {
    /// Indices at which some square ends (inclusive).
    pub endpoints: BTreeSet<usize>,
    pub occurrences: Option<Vec<SquareOccurrence>>,
}

impl SquareReport {
    pub fn has_square(&self) -> bool {
        !self.endpoints.is_empty()
    }
}

/// Z array: `z[i]` is the length of the longest common prefix of `s` and
/// `s[i..]`, with `z[0] = |s|`.
pub fn z_function<T: Eq>(s: &[T]) -> Vec<usize> {
    let n = s.len();
    let mut z = vec![0; n];
    if n == 0 {
        return z;
    }
    z[0] = n;
    let (mut l, mut r) = (0, 0);
    for i in 1..n {
        if i < r {
            z[i] = (r - i).min(z[i - l]);
        }
        while i + z[i] < n && s[z[i]] == s[i + z[i]] {
            z[i] += 1;
        }
        if i + z[i] > r {
            l = i;
            r = i + z[i];
        }
    }
    z
}

/// `out[i]` is the length of the longest common prefix of `pattern` and
/// `text[i..]`.
pub fn prefix_matches<T: Eq>(pattern: &[T], text: &[T]) -> Vec<usize> {
    let zp = z_function(pattern);
    let (m, n) = (pattern.len(), text.len());
    let mut out = vec![0; n];
    let (mut l, mut r) = (0, 0);
    for i in 0..n {
        let mut k = 0;
        if i < r {
            k = (r - i).min(zp[i - l]);
        }
        while k < m && i + k < n && pattern[k] == text[i + k] {
            k += 1;
        }
        out[i] = k;
        if i + k > r {
            l = i;
            r = i + k;
        }
    }
    out
}

/// Starting positions of every occurrence of `pattern` in `text`.
pub fn occurrences<T: Eq>(pattern: &[T], text: &[T]) -> Vec<usize> {
    if pattern.is_empty() || pattern.len() > text.len() {
        return Vec::new();
    }
    prefix_matches(pattern, text)
        .into_iter()
        .enumerate()
        .filter_map(|(i, k)| (k == pattern.len()).then_some(i))
        .collect()
}

/// A contiguous family of squares sharing one half-length: starting
/// positions `first..=last`, each of period `period`.
#[derive(Debug, Clone, Copy)]
struct SquareFamily {
    first: usize,
    last: usize,
    period: usize,
}

/// Reports every square of `s` (possibly more than once) as families.
fn for_each_square_family<B>(
    s: &[Letter],
    emit: &mut impl FnMut(SquareFamily) -> ControlFlow<B>,
) -> ControlFlow<B> {
    fn rec<B>(
        s: &[Letter],
        lo: usize,
        hi: usize,
        emit: &mut impl FnMut(SquareFamily) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        if hi - lo < 2 {
            return ControlFlow::Continue(());
        }
        let mid = lo + (hi - lo) / 2;
        rec(s, lo, mid, emit)?;
        rec(s, mid, hi, emit)?;
        crossing(s, lo, mid, hi, emit)
    }
    rec(s, 0, s.len(), emit)
}

/// Squares whose comparison window contains the pair `(j0, j0 + period)` for
/// an anchor at the split `mid` of `s[lo..hi]`.
fn crossing<B>(
    s: &[Letter],
    lo: usize,
    mid: usize,
    hi: usize,
    emit: &mut impl FnMut(SquareFamily) -> ControlFlow<B>,
) -> ControlFlow<B> {
    let u = &s[lo..mid];
    let v = &s[mid..hi];
    let (nu, nv) = (u.len(), v.len());
    let rev_u: Vec<Letter> = u.iter().rev().copied().collect();
    let rev_v: Vec<Letter> = v.iter().rev().copied().collect();

    // Center in the left part: anchor pair (mid - l, mid).
    let z_rev_u = z_function(&rev_u);
    let v_in_u = prefix_matches(v, u);
    for l in 1..=nu {
        let k1 = if l < nu { z_rev_u[l] } else { 0 };
        let k2 = v_in_u[nu - l];
        if k1 + k2 >= l {
            let j0 = mid - l;
            emit(SquareFamily {
                first: j0 - k1,
                last: j0 + k2 - l,
                period: l,
            })?;
        }
    }

    // Center in the right part: anchor pair (mid, mid + l).
    let z_v = z_function(v);
    let rev_u_in_rev_v = prefix_matches(&rev_u, &rev_v);
    for l in 1..=nv {
        let k1 = rev_u_in_rev_v[nv - l];
        let k2 = if l < nv { z_v[l] } else { 0 };
        if k1 + k2 >= l {
            emit(SquareFamily {
                first: mid - k1,
                last: mid + k2 - l,
                period: l,
            })?;
        }
    }
    ControlFlow::Continue(())
}

/// Some square occurring in `w`, if any.
pub fn find_square(w: &[Letter]) -> Option<SquareOccurrence> {
    match for_each_square_family(w, &mut |f| {
        ControlFlow::Break(SquareOccurrence {
            start: f.first,
            period: f.period,
        })
    }) {
        ControlFlow::Break(occ) => Some(occ),
        ControlFlow::Continue(()) => None,
    }
}

/// Whether `w` contains a nonempty factor of the form `yy`.
pub fn has_square(w: &[Letter]) -> bool {
    find_square(w).is_some()
}

pub fn is_square_free(w: &[Letter]) -> bool {
    !has_square(w)
}

/// Whether some suffix of `w` is a square.
///
/// A suffix of half-length `l` is a square exactly when the reversed word
/// agrees with itself shifted by `l` for at least `l` letters.
pub fn has_square_suffix(w: &[Letter]) -> bool {
    square_suffix_period(w).is_some()
}

/// Half-length of the shortest square suffix of `w`.
pub fn square_suffix_period(w: &[Letter]) -> Option<usize> {
    let rev: Vec<Letter> = w.iter().rev().copied().collect();
    let z = z_function(&rev);
    (1..=w.len() / 2).find(|&l| z[l] >= l)
}

/// Every index at which a square of `w` ends.
pub fn square_endpoints(w: &[Letter]) -> SquareReport {
    let n = w.len();
    let mut diff = vec![0i64; n + 1];
    let _ = for_each_square_family::<()>(w, &mut |f| {
        diff[f.first + 2 * f.period - 1] += 1;
        diff[f.last + 2 * f.period] -= 1;
        ControlFlow::Continue(())
    });
    let mut endpoints = BTreeSet::new();
    let mut running = 0i64;
    for (i, d) in diff.iter().take(n).enumerate() {
        running += d;
        if running > 0 {
            endpoints.insert(i);
        }
    }
    SquareReport {
        endpoints,
        occurrences: None,
    }
}

/// Exhaustive check of every `(start, period)` pair. Ground truth for the
/// fast detectors; cubic time, so limited to [`ORACLE_CAP`] letters.
pub fn naive_square_scan(w: &[Letter]) -> Result<SquareReport, SquareError> {
    naive_square_scan_capped(w, ORACLE_CAP)
}

pub fn naive_square_scan_capped(w: &[Letter], cap: usize) -> Result<SquareReport, SquareError> {
    if w.len() > cap {
        return Err(SquareError::OracleCap { len: w.len(), cap });
    }
    let n = w.len();
    let mut endpoints = BTreeSet::new();
    let mut occurrences = Vec::new();
    for start in 0..n {
        for period in 1..=(n - start) / 2 {
            if w[start..start + period] == w[start + period..start + 2 * period] {
                let occ = SquareOccurrence { start, period };
                endpoints.insert(occ.end());
                occurrences.push(occ);
            }
        }
    }
    Ok(SquareReport {
        endpoints,
        occurrences: Some(occurrences),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Word;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        Word::digits(s)
    }

    #[test]
    fn z_function_basic() {
        assert_eq!(z_function(&[1, 1, 2, 1, 1]), vec![5, 1, 0, 2, 1]);
        assert_eq!(z_function::<u32>(&[]), Vec::<usize>::new());
        assert_eq!(
            prefix_matches(&[1, 2], &[1, 2, 1, 1, 2]),
            vec![2, 0, 1, 2, 0]
        );
        assert_eq!(occurrences(&[0, 2], &[0, 1, 0, 2, 0, 3, 0, 2]), vec![2, 6]);
    }

    #[test]
    fn has_square_examples() {
        // ψ1(010) = 202101·2010201·202101
        assert!(!has_square(&w("2021012010201202101")));
        // ψ1(1)·0
        assert!(has_square(&w("20102010")));
        assert!(!has_square(&[]));
    }

    #[test]
    fn has_square_suffix_examples() {
        assert!(has_square_suffix(&w("20102011")));
        assert!(!has_square_suffix(&w("0102")));
        assert!(has_square_suffix(&w("0102010301020103")));
        assert!(!has_square_suffix(&[]));
    }

    #[test]
    fn endpoint_examples() {
        let set = |v: &[usize]| v.iter().copied().collect::<BTreeSet<_>>();
        assert_eq!(square_endpoints(&w("0101")).endpoints, set(&[3]));
        assert_eq!(square_endpoints(&w("010201")).endpoints, set(&[]));
        assert_eq!(square_endpoints(&w("11011")).endpoints, set(&[1, 4]));
        assert_eq!(naive_square_scan(&w("0101")).unwrap().endpoints, set(&[3]));
        let x = w("1121123210");
        let oracle = naive_square_scan(&x).unwrap();
        assert_eq!(oracle.endpoints, set(&[1, 4, 5]));
        assert_eq!(square_endpoints(&x).endpoints, oracle.endpoints);
    }

    #[test]
    fn oracle_cap() {
        assert!(matches!(
            naive_square_scan_capped(&[0; 10], 5),
            Err(SquareError::OracleCap { len: 10, cap: 5 })
        ));
    }

    #[test]
    fn exhaustive_binary_up_to_12() {
        for n in 0..=12usize {
            for bits in 0u32..(1 << n) {
                let v: Vec<Letter> = (0..n).map(|i| (bits >> i) & 1).collect();
                let oracle = naive_square_scan(&v).unwrap();
                assert_eq!(square_endpoints(&v).endpoints, oracle.endpoints, "{v:?}");
                assert_eq!(has_square(&v), oracle.has_square(), "{v:?}");
            }
        }
    }

    #[test]
    fn found_square_is_genuine() {
        let v = w("0102010301020103");
        let occ = find_square(&v).unwrap();
        let (s, p) = (occ.start, occ.period);
        assert_eq!(v[s..s + p], v[s + p..s + 2 * p]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2000))]

        #[test]
        fn agrees_with_oracle(v in prop::collection::vec(0u32..4, 0..64)) {
            let oracle = naive_square_scan(&v).unwrap();
            let fast = square_endpoints(&v);
            prop_assert_eq!(&fast.endpoints, &oracle.endpoints);
            prop_assert_eq!(has_square(&v), oracle.has_square());
            prop_assert_eq!(
                has_square_suffix(&v),
                !v.is_empty() && oracle.endpoints.contains(&(v.len() - 1))
            );
        }

        #[test]
        fn squares_persist_in_superwords(
            v in prop::collection::vec(0u32..3, 0..40),
            i in 0usize..40,
            j in 0usize..40,
        ) {
            let (i, j) = (i.min(v.len()), j.min(v.len()));
            let (i, j) = (i.min(j), i.max(j));
            if has_square(&v[i..j]) {
                prop_assert!(has_square(&v));
            }
        }
    }
}
