//! Value sets in `Z^r` stored inside a bounding box.
//!
//! A [`BoxedValueSet`] is exact on `[lo, hi]`. Outside the box, a point
//! with some coordinate below `lo` is not a member, and a coordinate above
//! `hi` behaves like `hi`. The clamping rule is sound because `hi` is
//! always at or above the conductor: if `α ∈ E` and `α_i ≥ c_i`, then
//! changing `α_i` to any other value `≥ c_i` stays in `E`.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxedValueSet {
    lo: Vec<i64>,
    hi: Vec<i64>,
    dims: Vec<usize>,
    strides: Vec<usize>,
    bits: Vec<bool>,
    conductor: Vec<i64>,
}

/// Classification of a fiber `F_J(E, α)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiberKind {
    Empty,
    Nonempty,
    Infinite,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MaximalsReport {
    pub maximals: Vec<Vec<i64>>,
    pub relative_maximals: Vec<Vec<i64>>,
    pub absolute_maximals: Vec<Vec<i64>>,
}

fn layout(lo: &[i64], hi: &[i64]) -> (Vec<usize>, Vec<usize>, usize) {
    let dims: Vec<usize> = lo.iter().zip(hi).map(|(l, h)| (h - l + 1) as usize).collect();
    let mut strides = vec![1usize; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        strides[k] = strides[k + 1] * dims[k + 1];
    }
    let total = dims.iter().product();
    (dims, strides, total)
}

/// Nonempty subsets of `0..r` as sorted index lists.
pub fn subsets(r: usize) -> Vec<Vec<usize>> {
    (1u32..(1 << r)).map(|m| (0..r).filter(|&i| m & (1 << i) != 0).collect()).collect()
}

impl BoxedValueSet {
    /// Builds the set from a membership predicate on the box. `hi` must lie
    /// in the tail: every point `≥ hi` (after clamping) must be a member.
    pub fn from_fn(lo: Vec<i64>, hi: Vec<i64>, mut member: impl FnMut(&[i64]) -> bool) -> Result<Self, Error> {
        assert!(!lo.is_empty() && lo.len() == hi.len(), "box dimensions disagree");
        assert!(lo.iter().zip(&hi).all(|(l, h)| l <= h), "empty box");
        let (_, _, total) = layout(&lo, &hi);
        let mut bits = Vec::with_capacity(total);
        let mut point = lo.clone();
        for _ in 0..total {
            bits.push(member(&point));
            for k in (0..point.len()).rev() {
                if point[k] < hi[k] {
                    point[k] += 1;
                    break;
                }
                point[k] = lo[k];
            }
        }
        Self::from_bits(lo, hi, bits)
    }

    /// Builds the set from a row-major bitmap (last coordinate fastest).
    pub fn from_bits(lo: Vec<i64>, hi: Vec<i64>, bits: Vec<bool>) -> Result<Self, Error> {
        let (dims, strides, total) = layout(&lo, &hi);
        assert_eq!(bits.len(), total, "bitmap size does not match the box");
        let mut s = BoxedValueSet { lo, hi, dims, strides, bits, conductor: Vec::new() };
        s.conductor = s.compute_conductor()?;
        Ok(s)
    }

    /// `lo + N^r` on the box `[lo, hi]`.
    pub fn orthant(lo: Vec<i64>, hi: Vec<i64>) -> Self {
        Self::from_fn(lo, hi, |_| true).expect("an orthant has a conductor")
    }

    /// A numerical semigroup (or relative ideal) from a table on `lo..=hi`.
    pub fn from_table(lo: i64, table: &[bool]) -> Result<Self, Error> {
        let hi = lo + table.len() as i64 - 1;
        Self::from_bits(vec![lo], vec![hi], table.to_vec())
    }

    pub fn r(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[i64] {
        &self.lo
    }

    pub fn hi(&self) -> &[i64] {
        &self.hi
    }

    /// The unique minimal `γ` with `γ + N^r ⊆ E`.
    pub fn conductor(&self) -> &[i64] {
        &self.conductor
    }

    fn index(&self, a: &[i64]) -> Option<usize> {
        let mut idx = 0;
        for k in 0..self.r() {
            if a[k] < self.lo[k] {
                return None;
            }
            let c = a[k].min(self.hi[k]);
            idx += (c - self.lo[k]) as usize * self.strides[k];
        }
        Some(idx)
    }

    fn point_of(&self, mut idx: usize) -> Vec<i64> {
        let mut p = vec![0; self.r()];
        for k in 0..self.r() {
            p[k] = self.lo[k] + (idx / self.strides[k]) as i64;
            idx %= self.strides[k];
        }
        p
    }

    fn coord(&self, idx: usize, k: usize) -> usize {
        (idx / self.strides[k]) % self.dims[k]
    }

    pub fn contains(&self, a: &[i64]) -> bool {
        assert_eq!(a.len(), self.r(), "point has the wrong dimension");
        self.index(a).is_some_and(|i| self.bits[i])
    }

    pub fn in_box(&self, a: &[i64]) -> bool {
        a.iter().zip(&self.lo).zip(&self.hi).all(|((x, l), h)| l <= x && x <= h)
    }

    /// Members inside the box, in row-major order.
    pub fn members(&self) -> impl Iterator<Item = Vec<i64>> + '_ {
        (0..self.bits.len()).filter(|&i| self.bits[i]).map(|i| self.point_of(i))
    }

    pub fn count_in_box(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Multidimensional suffix OR over the coordinates in `free`.
    fn suffix_or(&self, free: &[usize]) -> Vec<bool> {
        let mut t = self.bits.clone();
        for &k in free {
            let st = self.strides[k];
            for idx in (0..t.len()).rev() {
                if !t[idx] && self.coord(idx, k) + 1 < self.dims[k] && t[idx + st] {
                    t[idx] = true;
                }
            }
        }
        t
    }

    fn compute_conductor(&self) -> Result<Vec<i64>, Error> {
        let mut up = self.bits.clone();
        for k in 0..self.r() {
            let st = self.strides[k];
            for idx in (0..up.len()).rev() {
                if up[idx] && self.coord(idx, k) + 1 < self.dims[k] && !up[idx + st] {
                    up[idx] = false;
                }
            }
        }
        if !*up.last().unwrap() {
            return Err(Error::ConductorViolation);
        }
        let mut c = self.hi.clone();
        for (idx, &u) in up.iter().enumerate() {
            if u {
                for k in 0..self.r() {
                    let v = self.lo[k] + self.coord(idx, k) as i64;
                    c[k] = c[k].min(v);
                }
            }
        }
        let ci = self.index(&c).unwrap();
        if !up[ci] {
            return Err(Error::ConductorViolation);
        }
        Ok(c)
    }

    /// The minimum `m_E` (which exists because `E` is closed under min).
    pub fn min_element(&self) -> Option<Vec<i64>> {
        let mut m: Option<Vec<i64>> = None;
        for p in self.members() {
            m = Some(match m {
                None => p,
                Some(q) => q.iter().zip(&p).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        m
    }

    /// Classifies `F_J(E, α)`, with `Infinite` taking precedence.
    pub fn fiber(&self, a: &[i64], j: &[usize]) -> Result<FiberKind, Error> {
        if !self.in_box(a) {
            return Err(Error::OutOfBox);
        }
        let rest: Vec<usize> = (0..self.r()).filter(|k| !j.contains(k)).collect();
        let mut probe = a.to_vec();
        for &k in &rest {
            probe[k] = a[k].max(self.conductor[k]);
        }
        if self.contains(&probe) {
            return Ok(FiberKind::Infinite);
        }
        let table = self.suffix_or(&rest);
        Ok(if self.strict_fiber_nonempty(&table, a, &rest) { FiberKind::Nonempty } else { FiberKind::Empty })
    }

    fn strict_fiber_nonempty(&self, suffix: &[bool], a: &[i64], rest: &[usize]) -> bool {
        let mut b = a.to_vec();
        for &k in rest {
            b[k] = a[k] + 1;
        }
        self.index(&b).is_some_and(|i| suffix[i])
    }

    /// Maximal, relative maximal and absolute maximal points.
    pub fn maximals(&self) -> MaximalsReport {
        let r = self.r();
        let mut report = MaximalsReport::default();
        if r < 2 {
            return report;
        }
        let proper: Vec<Vec<usize>> = subsets(r).into_iter().filter(|s| s.len() < r).collect();
        let tables: Vec<(Vec<usize>, Vec<bool>)> = proper
            .iter()
            .map(|s| {
                let rest: Vec<usize> = (0..r).filter(|k| !s.contains(k)).collect();
                let t = self.suffix_or(&rest);
                (rest, t)
            })
            .collect();
        for idx in 0..self.bits.len() {
            if !self.bits[idx] {
                continue;
            }
            let p = self.point_of(idx);
            if (0..r).any(|k| p[k] >= self.conductor[k]) {
                continue;
            }
            let nonempty: Vec<bool> = tables.iter().map(|(rest, t)| self.strict_fiber_nonempty(t, &p, rest)).collect();
            let single = |i: usize| proper.iter().position(|s| s.len() == 1 && s[0] == i).unwrap();
            if (0..r).any(|i| nonempty[single(i)]) {
                continue;
            }
            let relative = proper.iter().zip(&nonempty).filter(|(s, _)| s.len() >= 2).all(|(_, &ne)| ne);
            let absolute = nonempty.iter().all(|&ne| !ne);
            if relative {
                report.relative_maximals.push(p.clone());
            }
            if absolute {
                report.absolute_maximals.push(p.clone());
            }
            report.maximals.push(p);
        }
        report
    }

    /// Length of a saturated chain from `a` to `b`, built by always stepping
    /// to the lexicographically smallest admissible point.
    pub fn chain_distance(&self, a: &[i64], b: &[i64]) -> Result<u64, Error> {
        let order: Vec<usize> = (0..self.r()).collect();
        self.chain_distance_with_order(a, b, &order)
    }

    /// As [`chain_distance`](Self::chain_distance), comparing coordinates in
    /// the given priority order. Every order yields a saturated chain.
    pub fn chain_distance_with_order(&self, a: &[i64], b: &[i64], order: &[usize]) -> Result<u64, Error> {
        if !self.contains(a) || !self.contains(b) {
            return Err(Error::NotInSet);
        }
        assert!(a.iter().zip(b).all(|(x, y)| x <= y), "chain endpoints must be comparable");
        // Beyond the box every step is a unit step along a clamped coordinate.
        let cap: Vec<i64> = b.iter().zip(&self.hi).map(|(x, h)| *x.min(h)).collect();
        let mut extra: u64 = b.iter().zip(&cap).map(|(x, c)| (x - c) as u64).sum();
        let mut cur: Vec<i64> = a.iter().zip(&cap).map(|(x, c)| *x.min(c)).collect();
        // Points of a beyond the box are already at the cap: adjust.
        extra -= a.iter().zip(&self.hi).map(|(x, h)| (x - x.min(h)) as u64).sum::<u64>();
        let mut steps = 0u64;
        while cur != cap {
            let mut next = cur.clone();
            let found = self.lex_next(&cur, &cap, order, 0, &mut next, true);
            assert!(found, "the endpoint itself is always admissible");
            cur = next;
            steps += 1;
        }
        Ok(steps + extra)
    }

    /// Lexicographically (in `order`) smallest member `γ` with
    /// `cur ≤ γ ≤ cap`, `γ ≠ cur`, written into `out`.
    fn lex_next(
        &self,
        cur: &[i64],
        cap: &[i64],
        order: &[usize],
        depth: usize,
        out: &mut Vec<i64>,
        tied: bool,
    ) -> bool {
        if depth == order.len() {
            return !tied && self.contains(out);
        }
        let k = order[depth];
        for v in cur[k]..=cap[k] {
            out[k] = v;
            if self.lex_next(cur, cap, order, depth + 1, out, tied && v == cur[k]) {
                return true;
            }
        }
        out[k] = cur[k];
        false
    }

    /// `pr_J(E)` as a value set in `Z^{#J}`.
    pub fn project(&self, j: &[usize]) -> BoxedValueSet {
        let rest: Vec<usize> = (0..self.r()).filter(|k| !j.contains(k)).collect();
        let t = self.suffix_or(&rest);
        let lo: Vec<i64> = j.iter().map(|&k| self.lo[k]).collect();
        let hi: Vec<i64> = j.iter().map(|&k| self.hi[k]).collect();
        let mut base = self.lo.clone();
        BoxedValueSet::from_fn(lo, hi, |q| {
            for (pos, &k) in j.iter().enumerate() {
                base[k] = q[pos];
            }
            self.index(&base).is_some_and(|i| t[i])
        })
        .expect("a projection inherits the tail")
    }

    /// `Θ_1..Θ_r` from the relative maximals of the projections.
    pub fn theta_gh(&self) -> Vec<u64> {
        let r = self.r();
        let mut out = vec![0u64; r];
        for (i, slot) in out.iter_mut().enumerate().skip(1) {
            let mut vals = BTreeSet::new();
            for sub in subsets(i) {
                let mut j = sub.clone();
                j.push(i);
                let proj = self.project(&j);
                for p in proj.maximals().relative_maximals {
                    vals.insert(*p.last().unwrap());
                }
            }
            *slot = vals.len() as u64;
        }
        out
    }

    /// Gaps of `pr_i(E)` at or above `from`.
    pub fn projection_gaps(&self, i: usize, from: i64) -> u64 {
        let p = self.project(&[i]);
        (from..p.conductor[0]).filter(|&v| !p.contains(&[v])).count() as u64
    }

    /// `l(J/J(γ))` by the Guzmán–Hefez formula with the supplied `Θ`.
    pub fn gh_colength(&self, gamma: &[i64], theta: &[u64]) -> Result<i64, Error> {
        if gamma.iter().zip(&self.conductor).any(|(g, c)| g < c) {
            return Err(Error::ConductorViolation);
        }
        assert_eq!(theta.first(), Some(&0), "Θ_1 is always zero");
        let m = self.min_element().ok_or(Error::NotInSet)?;
        Ok((0..self.r()).map(|i| gamma[i] - m[i] - self.projection_gaps(i, m[i]) as i64 - theta[i] as i64).sum())
    }

    /// `l(J/J(γ)) = d_E(m_E, γ)`.
    pub fn chain_colength(&self, gamma: &[i64]) -> Result<u64, Error> {
        let m = self.min_element().ok_or(Error::NotInSet)?;
        self.chain_distance(&m, gamma)
    }

    /// `E ∪ {p}` on the smallest box containing both.
    pub fn with_point(&self, p: &[i64]) -> BoxedValueSet {
        let lo: Vec<i64> = self.lo.iter().zip(p).map(|(a, b)| *a.min(b)).collect();
        BoxedValueSet::from_fn(lo, self.hi.clone(), |q| q == p || self.contains(q))
            .expect("adding a point keeps the tail")
    }

    /// `E + v`.
    pub fn shifted(&self, v: &[i64]) -> BoxedValueSet {
        let lo: Vec<i64> = self.lo.iter().zip(v).map(|(a, b)| a + b).collect();
        let hi: Vec<i64> = self.hi.iter().zip(v).map(|(a, b)| a + b).collect();
        let mut s = self.clone();
        s.conductor = s.conductor.iter().zip(v).map(|(a, b)| a + b).collect();
        s.lo = lo;
        s.hi = hi;
        s
    }

    /// The same set on a different box (the new `hi` must be in the tail).
    pub fn reboxed(&self, lo: Vec<i64>, hi: Vec<i64>) -> Result<BoxedValueSet, Error> {
        BoxedValueSet::from_fn(lo, hi, |q| self.contains(q))
    }

    fn union_box(&self, other: &BoxedValueSet) -> (Vec<i64>, Vec<i64>) {
        let lo = self.lo.iter().zip(&other.lo).map(|(a, b)| *a.min(b)).collect();
        let hi = self.hi.iter().zip(&other.hi).map(|(a, b)| *a.max(b)).collect();
        (lo, hi)
    }

    fn all_points(lo: &[i64], hi: &[i64], mut f: impl FnMut(&[i64]) -> bool) -> bool {
        let mut p = lo.to_vec();
        loop {
            if !f(&p) {
                return false;
            }
            let mut k = p.len();
            loop {
                if k == 0 {
                    return true;
                }
                k -= 1;
                if p[k] < hi[k] {
                    p[k] += 1;
                    break;
                }
                p[k] = lo[k];
            }
        }
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &BoxedValueSet) -> bool {
        let (lo, hi) = self.union_box(other);
        Self::all_points(&lo, &hi, |q| !self.contains(q) || other.contains(q))
    }

    /// Equality as subsets of `Z^r`, independent of the boxes.
    pub fn same_set(&self, other: &BoxedValueSet) -> bool {
        let (lo, hi) = self.union_box(other);
        Self::all_points(&lo, &hi, |q| self.contains(q) == other.contains(q))
    }

    /// The first point of the union box where the sets differ.
    pub fn first_difference(&self, other: &BoxedValueSet) -> Option<Vec<i64>> {
        let (lo, hi) = self.union_box(other);
        let mut bad = None;
        Self::all_points(&lo, &hi, |q| {
            if self.contains(q) != other.contains(q) {
                bad = Some(q.to_vec());
                false
            } else {
                true
            }
        });
        bad
    }
}

/// `d(E_1 ∖ E_2) = d_{E_1}(m_{E_1}, γ) - d_{E_2}(m_{E_2}, γ)` with `γ = c_{E_2}`.
pub fn distance_diff(e1: &BoxedValueSet, e2: &BoxedValueSet) -> Result<u64, Error> {
    distance_diff_at(e1, e2, e2.conductor())
}

/// As [`distance_diff`] at any `γ ≥ c_{E_2}`.
pub fn distance_diff_at(e1: &BoxedValueSet, e2: &BoxedValueSet, gamma: &[i64]) -> Result<u64, Error> {
    if !e2.is_subset_of(e1) {
        return Err(Error::NotASubset);
    }
    if gamma.iter().zip(e2.conductor()).any(|(g, c)| g < c) {
        return Err(Error::ConductorViolation);
    }
    let m1 = e1.min_element().ok_or(Error::NotInSet)?;
    let m2 = e2.min_element().ok_or(Error::NotInSet)?;
    let d1 = e1.chain_distance(&m1, gamma)?;
    let d2 = e2.chain_distance(&m2, gamma)?;
    Ok(d1 - d2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branch::{semigroup_table, Parametrization};
    use crate::testutil::span_value_set;

    fn numerical(gens: &[u32], bound: u32) -> BoxedValueSet {
        BoxedValueSet::from_table(0, &semigroup_table(gens, bound)).unwrap()
    }

    fn cusp_pair_semigroup() -> BoxedValueSet {
        let f1 = Parametrization::puiseux_int(2, &[(3, 1)]).unwrap();
        let f2 = Parametrization::puiseux_int(2, &[(3, 1), (4, 1)]).unwrap();
        span_value_set(&[f1, f2], &[10, 10], 10)
    }

    #[test]
    fn orthant_basics() {
        let n2 = BoxedValueSet::orthant(vec![0, 0], vec![4, 4]);
        assert_eq!(n2.conductor(), &[0, 0]);
        assert_eq!(n2.maximals(), MaximalsReport::default());
        assert_eq!(n2.fiber(&[0, 0], &[0]).unwrap(), FiberKind::Infinite);
        assert_eq!(n2.chain_distance(&[0, 0], &[2, 3]).unwrap(), 5);
        assert_eq!(n2.gh_colength(&[3, 5], &[0, 0]).unwrap(), 8);
        let shifted = BoxedValueSet::orthant(vec![1, 1], vec![4, 4]);
        assert_eq!(distance_diff(&n2, &shifted).unwrap(), 2);
        assert_eq!(distance_diff(&n2, &n2).unwrap(), 0);
        assert_eq!(distance_diff(&shifted, &n2), Err(Error::NotASubset));
    }

    #[test]
    fn numerical_semigroups() {
        let cusp = numerical(&[2, 3], 10);
        assert_eq!(cusp.conductor(), &[2]);
        assert_eq!(cusp.chain_distance(&[0], &[2]).unwrap(), 1);
        assert_eq!(cusp.gh_colength(&[2], &[0]).unwrap(), 1);
        let s = numerical(&[6, 9, 19], 80);
        assert_eq!(s.conductor(), &[42]);
        assert_eq!(s.chain_distance(&[0], &[42]).unwrap(), 21);
        // With J = I the complement is empty and the tail condition is vacuous.
        assert_eq!(s.fiber(&[6], &[0]).unwrap(), FiberKind::Infinite);
        assert_eq!(s.fiber(&[100], &[0]), Err(Error::OutOfBox));
        assert_eq!(s.chain_distance(&[0], &[5]), Err(Error::NotInSet));
    }

    #[test]
    fn clamping_extends_the_tail() {
        let cusp = numerical(&[2, 3], 4);
        assert!(cusp.contains(&[100]));
        assert!(!cusp.contains(&[-1]));
        assert_eq!(cusp.chain_distance(&[0], &[12]).unwrap(), 11);
        let z = cusp.with_point(&[-3]);
        assert!(z.contains(&[-3]) && !z.contains(&[-2]));
    }

    #[test]
    fn two_branch_value_set_from_generators() {
        let s = cusp_pair_semigroup();
        assert_eq!(s.conductor(), &[9, 9]);
        assert!(s.contains(&[2, 2]) && s.contains(&[3, 3]) && !s.contains(&[2, 3]));
        assert_eq!(s.chain_distance(&[0, 0], &[9, 9]).unwrap(), 9);
        assert_eq!(s.fiber(&[9, 9], &[0]).unwrap(), FiberKind::Infinite);
        let rep = s.maximals();
        assert_eq!(rep.maximals, rep.relative_maximals);
        assert_eq!(rep.maximals, rep.absolute_maximals);
        let theta = s.theta_gh();
        assert_eq!(theta, vec![0, 7]);
        let diag: Vec<Vec<i64>> = [0, 2, 3, 4, 5, 6, 8].iter().map(|&v| vec![v, v]).collect();
        assert_eq!(rep.maximals, diag);
        // Symmetry of plane curve semigroups: γ maximal iff c - 1 - γ maximal.
        for m in &rep.maximals {
            assert!(rep.maximals.contains(&vec![8 - m[0], 8 - m[1]]));
        }
        assert_eq!(s.gh_colength(&[9, 9], &theta).unwrap() as u64, s.chain_colength(&[9, 9]).unwrap());
    }

    #[test]
    fn chain_length_does_not_depend_on_tie_breaking() {
        let s = cusp_pair_semigroup();
        let a = s.chain_distance_with_order(&[0, 0], &[9, 9], &[0, 1]).unwrap();
        let b = s.chain_distance_with_order(&[0, 0], &[9, 9], &[1, 0]).unwrap();
        assert_eq!(a, b);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(24))]

            #[test]
            fn numerical_semigroup_colengths(a in 2u32..9, b in 2u32..15, c in 2u32..25) {
                prop_assume!(num_integer::gcd(a, num_integer::gcd(b, c)) == 1);
                let s = numerical(&[a, b, c], 200);
                let cond = s.conductor()[0];
                let gaps = s.projection_gaps(0, 0) as i64;
                prop_assert_eq!(s.chain_colength(&[cond]).unwrap() as i64, cond - gaps);
                prop_assert_eq!(s.gh_colength(&[cond + 3], &[0]).unwrap(), cond + 3 - gaps);
            }

            #[test]
            fn two_cusps_chain_and_formula(k in 4u32..9, hi in 0i64..3) {
                let f1 = Parametrization::puiseux_int(2, &[(3, 1)]).unwrap();
                let f2 = Parametrization::puiseux_int(2, &[(3, 1), (k, 1)]).unwrap();
                let c = 2 + 3 + k as i64;
                let top = c + hi;
                let s = span_value_set(&[f1, f2], &[top, top], top as u32);
                prop_assert_eq!(s.conductor(), &[c, c][..]);
                let theta = s.theta_gh();
                let chain = s.chain_colength(&[c, c]).unwrap();
                prop_assert_eq!(s.gh_colength(&[c, c], &theta).unwrap(), chain as i64);
                prop_assert_eq!(chain, s.chain_distance_with_order(&[0, 0], &[c, c], &[1, 0]).unwrap());
                // dim O/C = c_1 + c_2 - δ, with δ = δ_1 + δ_2 + I.
                let delta = 2 + (3 + k as i64);
                prop_assert_eq!(chain as i64, 2 * c - delta);
            }
        }
    }
}
