//! Signed multi-indices under the Clifford sign rules
//! `θ_{iiI} = −θ_I` and `θ_{ijI} = −θ_{jiI}`.

use std::fmt;

use crate::error::{Error, Result};

/// A strictly increasing index sequence with a sign `±1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SignedIndex {
    pub index: Vec<u8>,
    pub sign: i8,
}

impl SignedIndex {
    pub fn new(index: Vec<u8>) -> Result<Self> {
        if index.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(format!("index {index:?} is not strictly increasing")));
        }
        Ok(SignedIndex { index, sign: 1 })
    }

    pub fn empty() -> Self {
        SignedIndex { index: vec![], sign: 1 }
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    pub fn contains(&self, i: u8) -> bool {
        self.index.binary_search(&i).is_ok()
    }

    pub fn negate(&self) -> Self {
        SignedIndex { index: self.index.clone(), sign: -self.sign }
    }
}

impl fmt::Display for SignedIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.index.iter().map(|i| i.to_string()).collect();
        write!(f, "{}({})", if self.sign < 0 { "-" } else { "+" }, body.join(","))
    }
}

/// Normal form of `θ_seq`: the unique `(I₀, ±1)` with `θ_seq = ±θ_{I₀}`.
///
/// Generators are pushed onto the sorted tail from the right; passing a
/// smaller generator costs a sign, meeting an equal one annihilates the
/// pair at the cost of another sign.
pub fn reduce(seq: &[u8]) -> SignedIndex {
    let mut out: Vec<u8> = Vec::with_capacity(seq.len());
    let mut sign = 1i8;
    for &x in seq.iter().rev() {
        let p = out.partition_point(|&y| y < x);
        if p % 2 == 1 {
            sign = -sign;
        }
        if out.get(p) == Some(&x) {
            out.remove(p);
            sign = -sign;
        } else {
            out.insert(p, x);
        }
    }
    SignedIndex { index: out, sign }
}

/// `θ_a · θ_b` as the reduced concatenation.
pub fn compose(a: &SignedIndex, b: &SignedIndex) -> SignedIndex {
    let mut seq = a.index.clone();
    seq.extend_from_slice(&b.index);
    let r = reduce(&seq);
    SignedIndex { index: r.index, sign: r.sign * a.sign * b.sign }
}

/// All increasing length-`k` subsequences of `(1, …, n)` in lexicographic order.
pub fn subsequences(n: usize, k: usize) -> Result<Vec<SignedIndex>> {
    subsequences_in(1, n, k)
}

/// Increasing length-`k` subsequences of `(lo, …, hi)`.
pub fn subsequences_in(lo: usize, hi: usize, k: usize) -> Result<Vec<SignedIndex>> {
    let size = (hi + 1).saturating_sub(lo);
    if k > size {
        return Err(Error::InvalidArgument(format!("length {k} exceeds {size} generators")));
    }
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (lo..lo + k).map(|v| v as u8).collect();
    loop {
        out.push(SignedIndex { index: cur.clone(), sign: 1 });
        // advance to the next combination
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if (cur[i] as usize) < hi - (k - 1 - i) {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// `1` if the proposition holds, `0` otherwise.
pub fn indicator(p: bool) -> i64 {
    p as i64
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Rewrites `…ii…` → `−(……)` and `…ij…` (i > j) → `−(…ji…)` anywhere until
    /// nothing applies.
    fn rewrite_oracle(seq: &[u8]) -> SignedIndex {
        let mut s = seq.to_vec();
        let mut sign = 1i8;
        'outer: loop {
            for p in 0..s.len().saturating_sub(1) {
                if s[p] == s[p + 1] {
                    s.drain(p..p + 2);
                    sign = -sign;
                    continue 'outer;
                }
                if s[p] > s[p + 1] {
                    s.swap(p, p + 1);
                    sign = -sign;
                    continue 'outer;
                }
            }
            return SignedIndex { index: s, sign };
        }
    }

    fn idx(v: &[u8]) -> SignedIndex {
        SignedIndex::new(v.to_vec()).unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce(&[1]), idx(&[1]));
        assert_eq!(reduce(&[3, 3]), idx(&[]).negate());
        assert_eq!(reduce(&[2, 1, 2]), idx(&[1]));
        assert_eq!(rewrite_oracle(&[2, 1, 2]), idx(&[1]));
    }

    #[test]
    fn compose_examples() {
        assert_eq!(compose(&idx(&[1]), &idx(&[2])), idx(&[1, 2]));
        assert_eq!(compose(&idx(&[2]), &idx(&[1])), idx(&[1, 2]).negate());
        assert_eq!(compose(&idx(&[1]), &idx(&[1])), idx(&[]).negate());
    }

    #[test]
    fn subsequence_examples() {
        assert_eq!(subsequences(2, 1).unwrap(), vec![idx(&[1]), idx(&[2])]);
        assert_eq!(subsequences(3, 2).unwrap(), vec![idx(&[1, 2]), idx(&[1, 3]), idx(&[2, 3])]);
        assert_eq!(subsequences(2, 0).unwrap(), vec![idx(&[])]);
        assert!(subsequences(2, 3).is_err());
        assert_eq!(subsequences(4, 2).unwrap().len(), 6);
        assert_eq!(subsequences_in(0, 2, 2).unwrap()[0], idx(&[0, 1]));
    }

    #[test]
    fn indicator_values() {
        assert_eq!(indicator(true), 1);
        assert_eq!(indicator(false), 0);
        let i = idx(&[1]);
        assert_eq!(indicator(!i.contains(1)), 0);
    }

    #[test]
    fn compose_exhaustive_small() {
        for n in 1..=4usize {
            let all: Vec<_> = (0..=n).flat_map(|k| subsequences(n, k).unwrap()).collect();
            for a in &all {
                // θ_I θ_I = (−1)^{|I|(|I|+1)/2} θ_∅
                let l = a.len();
                let expect = if (l * (l + 1) / 2) % 2 == 0 { idx(&[]) } else { idx(&[]).negate() };
                assert_eq!(compose(a, a), expect);
                for b in &all {
                    for c in &all {
                        assert_eq!(compose(&compose(a, b), c), compose(a, &compose(b, c)));
                    }
                }
            }
        }
    }

    fn perm_sign(p: &[usize]) -> i8 {
        let mut s = 1;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                if p[i] > p[j] {
                    s = -s;
                }
            }
        }
        s
    }

    proptest! {
        #[test]
        fn matches_rewrite_oracle(seq in proptest::collection::vec(0u8..6, 0..9)) {
            prop_assert_eq!(reduce(&seq), rewrite_oracle(&seq));
        }

        #[test]
        fn idempotent(seq in proptest::collection::vec(0u8..6, 0..9)) {
            let r = reduce(&seq);
            prop_assert_eq!(reduce(&r.index), SignedIndex { index: r.index.clone(), sign: 1 });
        }

        #[test]
        fn permutation_sign(perm in Just((0..6usize).collect::<Vec<_>>()).prop_shuffle()) {
            let base: Vec<u8> = vec![1, 2, 3, 4, 5, 6];
            let permuted: Vec<u8> = perm.iter().map(|&p| base[p]).collect();
            prop_assert_eq!(reduce(&permuted).sign, perm_sign(&perm) * reduce(&base).sign);
        }
    }
}
