//! Signed permutations: the hyperoctahedral group `W(C_n)` and its
//! subgroup `S_n`.
//!
//! Generators are `s_1 .. s_{n-1}` (swap positions `i`, `i+1`) and `s_n`
//! (negate position `n`), matching the action on `A = Q[v^+-][X_1^+-..X_n^+-]`
//! by `X_i <-> X_{i+1}` and `X_n -> 1/X_n`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// `w(j) = signs[j] * images[j]` for `j = 1..n`, stored zero-based with
/// one-based images.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    window: Vec<i32>,
}

impl SignedPermutation {
    pub fn identity(n: usize) -> Self {
        SignedPermutation { window: (1..=n as i32).collect() }
    }

    /// Build from the signed window `[w(1), .., w(n)]`.
    pub fn from_window(window: Vec<i32>) -> Result<Self> {
        let n = window.len() as i32;
        let mut seen = vec![false; window.len()];
        for &x in &window {
            if x == 0 || x.abs() > n || seen[(x.abs() - 1) as usize] {
                return Err(Error::InvalidParams(format!("not a signed permutation: {window:?}")));
            }
            seen[(x.abs() - 1) as usize] = true;
        }
        Ok(SignedPermutation { window })
    }

    /// The simple reflection `s_i`, `1 <= i <= n`.
    pub fn simple(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::InvalidIndex { index: i, reason: format!("simple reflections are s_1..s_{n}") });
        }
        let mut w = Self::identity(n);
        if i < n {
            w.window.swap(i - 1, i);
        } else {
            w.window[n - 1] = -w.window[n - 1];
        }
        Ok(w)
    }

    pub fn rank(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[i32] {
        &self.window
    }

    pub fn is_identity(&self) -> bool {
        self.window.iter().enumerate().all(|(j, &x)| x == j as i32 + 1)
    }

    pub fn has_signs(&self) -> bool {
        self.window.iter().any(|&x| x < 0)
    }

    fn apply_index(&self, j: i32) -> i32 {
        let w = self.window[(j.abs() - 1) as usize];
        if j < 0 {
            -w
        } else {
            w
        }
    }

    /// `(self * other)(j) = self(other(j))`.
    pub fn compose(&self, other: &Self) -> Self {
        SignedPermutation { window: other.window.iter().map(|&j| self.apply_index(j)).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.window.len()];
        for (j, &x) in self.window.iter().enumerate() {
            let target = (x.abs() - 1) as usize;
            inv[target] = if x < 0 { -(j as i32 + 1) } else { j as i32 + 1 };
        }
        SignedPermutation { window: inv }
    }

    /// Linear action on exponent vectors: `e_j -> sign * e_|w(j)|`.
    pub fn act_on_exponents(&self, lambda: &[i32]) -> Vec<i32> {
        let mut out = vec![0; lambda.len()];
        for (j, &x) in self.window.iter().enumerate() {
            let target = (x.abs() - 1) as usize;
            out[target] = if x < 0 { -lambda[j] } else { lambda[j] };
        }
        out
    }

    /// Number of positive roots `e_i - e_j, e_i + e_j (i < j), 2 e_i` sent
    /// to negative roots.
    pub fn length(&self) -> usize {
        let n = self.window.len();
        let mut len = 0;
        for i in 0..n {
            if self.window[i] < 0 {
                len += 1;
            }
            for j in i + 1..n {
                // image of e_i - e_j and e_i + e_j
                let (a, b) = (self.window[i], self.window[j]);
                if root_is_negative(a, -b) {
                    len += 1;
                }
                if root_is_negative(a, b) {
                    len += 1;
                }
            }
        }
        len
    }

    /// `self(alpha_i) < 0` for the simple root `alpha_i`.
    pub fn has_right_descent(&self, i: usize) -> bool {
        let n = self.window.len();
        if i < n {
            root_is_negative(self.window[i - 1], -self.window[i])
        } else {
            self.window[n - 1] < 0
        }
    }

    /// `l(s_i w) > l(w)`, i.e. `w^-1(alpha_i) > 0`.
    pub fn left_mul_lengthens(&self, i: usize) -> bool {
        !self.inverse().has_right_descent(i)
    }

    /// A reduced word `[i_1, .., i_k]` with `w = s_{i_1} ... s_{i_k}`, found by
    /// repeatedly stripping the smallest right descent.
    pub fn reduced_word(&self) -> Vec<usize> {
        let n = self.window.len();
        let mut w = self.clone();
        let mut word = Vec::new();
        'outer: while !w.is_identity() {
            for i in 1..=n {
                if w.has_right_descent(i) {
                    w = w.compose(&SignedPermutation::simple(n, i).unwrap());
                    word.push(i);
                    continue 'outer;
                }
            }
            unreachable!("non-identity element without right descent");
        }
        word.reverse();
        word
    }

    /// Product of simple reflections along a word.
    pub fn from_word(n: usize, word: &[usize]) -> Result<Self> {
        let mut w = Self::identity(n);
        for &i in word {
            w = w.compose(&Self::simple(n, i)?);
        }
        Ok(w)
    }

    /// All elements of `S_n` (`signed = false`) or `W(C_n)`.
    pub fn all(n: usize, signed: bool) -> Vec<Self> {
        let mut perms = Vec::new();
        let mut cur: Vec<i32> = (1..=n as i32).collect();
        permutations(&mut cur, 0, &mut perms);
        let mut out = Vec::new();
        for p in perms {
            if signed {
                for mask in 0..(1u32 << n) {
                    let window = p
                        .iter()
                        .enumerate()
                        .map(|(j, &x)| if mask >> j & 1 == 1 { -x } else { x })
                        .collect();
                    out.push(SignedPermutation { window });
                }
            } else {
                out.push(SignedPermutation { window: p });
            }
        }
        out.sort();
        out
    }

    /// Rendering key: `(length, reduced word)`.
    pub fn display_key(&self) -> (usize, Vec<usize>) {
        (self.length(), self.reduced_word())
    }
}

/// Sign of the root `sgn(a) e_|a| + sgn(b) e_|b|` with `|a| != |b|`: negative
/// iff the coefficient at the smaller index is negative.
fn root_is_negative(a: i32, b: i32) -> bool {
    if a.abs() < b.abs() {
        a < 0
    } else {
        b < 0
    }
}

fn permutations(cur: &mut Vec<i32>, k: usize, out: &mut Vec<Vec<i32>>) {
    if k == cur.len() {
        out.push(cur.clone());
        return;
    }
    for i in k..cur.len() {
        cur.swap(k, i);
        permutations(cur, k + 1, out);
        cur.swap(k, i);
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = self.reduced_word();
        if word.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = word.iter().map(|i| format!("s{i}")).collect();
        write!(f, "{}", parts.join("*"))
    }
}

impl fmt::Debug for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.window)
    }
}

impl Serialize for SignedPermutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{HashMap, VecDeque};

    /// Word length by breadth-first search in the Cayley graph.
    fn bfs_lengths(n: usize, signed: bool) -> HashMap<SignedPermutation, usize> {
        let gens: Vec<usize> = if signed { (1..=n).collect() } else { (1..n).collect() };
        let mut dist = HashMap::new();
        let id = SignedPermutation::identity(n);
        dist.insert(id.clone(), 0);
        let mut queue = VecDeque::from([id]);
        while let Some(w) = queue.pop_front() {
            let d = dist[&w];
            for &i in &gens {
                let next = w.compose(&SignedPermutation::simple(n, i).unwrap());
                if !dist.contains_key(&next) {
                    dist.insert(next.clone(), d + 1);
                    queue.push_back(next);
                }
            }
        }
        dist
    }

    #[test]
    fn group_sizes() {
        assert_eq!(SignedPermutation::all(3, true).len(), 48);
        assert_eq!(SignedPermutation::all(3, false).len(), 6);
        assert_eq!(SignedPermutation::all(1, true).len(), 2);
    }

    #[test]
    fn length_matches_cayley_graph() {
        for n in 1..=4 {
            for signed in [false, true] {
                let dist = bfs_lengths(n, signed);
                assert_eq!(dist.len(), SignedPermutation::all(n, signed).len());
                for (w, d) in dist {
                    assert_eq!(w.length(), d, "{w:?}");
                    let word = w.reduced_word();
                    assert_eq!(word.len(), d);
                    assert_eq!(SignedPermutation::from_word(n, &word).unwrap(), w);
                    if !signed {
                        assert!(word.iter().all(|&i| i < n));
                    }
                }
            }
        }
    }

    #[test]
    fn group_axioms() {
        let all = SignedPermutation::all(3, true);
        let id = SignedPermutation::identity(3);
        for a in &all {
            assert_eq!(a.compose(&a.inverse()), id);
            assert_eq!(a.inverse().compose(a), id);
            for b in all.iter().step_by(5) {
                for c in all.iter().step_by(7) {
                    assert_eq!(a.compose(b).compose(c), a.compose(&b.compose(c)));
                }
                let lam = [1, -2, 3];
                assert_eq!(
                    a.compose(b).act_on_exponents(&lam),
                    a.act_on_exponents(&b.act_on_exponents(&lam))
                );
            }
        }
    }

    #[test]
    fn left_multiplication_length_rule() {
        for n in 1..=3 {
            for w in SignedPermutation::all(n, true) {
                for i in 1..=n {
                    let sw = SignedPermutation::simple(n, i).unwrap().compose(&w);
                    assert_eq!(w.left_mul_lengthens(i), sw.length() > w.length());
                }
            }
        }
    }

    #[test]
    fn simple_reflection_rendering() {
        let w = SignedPermutation::from_word(2, &[1, 2]).unwrap();
        assert_eq!(w.to_string(), "s1*s2");
        assert_eq!(SignedPermutation::identity(2).to_string(), "1");
        assert!(SignedPermutation::simple(2, 3).is_err());
    }
}
