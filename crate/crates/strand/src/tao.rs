//! Text assembling from a dictionary: find, for every text position, the
//! longest dictionary string starting there (suffix array plus segment tree),
//! then cover the text greedily with those matches.
//!
//! The decomposition places dictionary strings at positions q_1 = 1, ...,
//! q_r = m - |last| + 1 so that consecutive pieces overlap or touch.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::qsim::Emulator;
use crate::segment_tree::SegmentTree;
use crate::suffix_array::suffix_array;
use crate::{Error, Result};

/// Comparison budget for the feasibility oracle.
const ORACLE_BUDGET: u64 = 10_000_000;

// ---------------------------------------------------------------------------
// Instance and result types
// ---------------------------------------------------------------------------

/// A text-assembling instance: the target text and a dictionary of pieces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TAOInstance {
    text: Vec<u8>,
    dict: Vec<Vec<u8>>,
}

impl TAOInstance {
    /// Validates and wraps a text plus dictionary.
    pub fn new(text: Vec<u8>, dict: Vec<Vec<u8>>) -> Result<Self> {
        if text.is_empty() {
            return Err(Error::usage("text must be non-empty"));
        }
        if dict.iter().any(|s| s.is_empty()) {
            return Err(Error::usage("dictionary strings must be non-empty"));
        }
        Ok(Self { text, dict })
    }

    /// Convenience constructor from string literals.
    pub fn from_strs(text: &str, dict: &[&str]) -> Result<Self> {
        Self::new(
            text.as_bytes().to_vec(),
            dict.iter().map(|s| s.as_bytes().to_vec()).collect(),
        )
    }

    /// The target text.
    pub fn text(&self) -> &[u8] {
        &self.text
    }

    /// The dictionary strings.
    pub fn dict(&self) -> &[Vec<u8>] {
        &self.dict
    }

    /// Text length m.
    pub fn text_len(&self) -> usize {
        self.text.len()
    }

    /// Dictionary size n.
    pub fn dict_len(&self) -> usize {
        self.dict.len()
    }

    /// Total length of all dictionary strings.
    pub fn total_dict_len(&self) -> usize {
        self.dict.iter().map(|s| s.len()).sum()
    }
}

/// Per-position longest dictionary match: entry i is the 1-based index of the
/// longest dictionary string starting at text position i, or -1 when none
/// matches there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LongArray {
    values: Vec<i64>,
}

impl LongArray {
    /// Wraps raw entries; mainly useful for tests and tooling.
    pub fn from_values(values: Vec<i64>) -> Self {
        Self { values }
    }

    /// Entry at 1-based text position i.
    pub fn get(&self, i: usize) -> Result<i64> {
        if i == 0 || i > self.values.len() {
            return Err(Error::index(format!(
                "long array position {} out of 1..={}",
                i,
                self.values.len()
            )));
        }
        Ok(self.values[i - 1])
    }

    /// All entries in text order.
    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// Number of entries, equal to the text length.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// True when the array has no entries.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// A decomposition of the text: piece k is dictionary string `indices[k]`
/// placed at 1-based text position `starts[k]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assembly {
    #[serde(rename = "Q")]
    pub starts: Vec<usize>,
    #[serde(rename = "I")]
    pub indices: Vec<usize>,
}

// ---------------------------------------------------------------------------
// Suffix-range search
// ---------------------------------------------------------------------------

/// Finds the maximal suffix-array range whose suffixes all start with `u`.
///
/// `sa` must be the suffix array of `text` with 1-based entries; the returned
/// bounds are 1-based positions in suffix-array order. Comparison work goes
/// through `qcompare` on prefixes clamped to the text end.
pub fn search_segment(
    text: &[u8],
    sa: &[usize],
    u: &[u8],
    emu: &mut Emulator,
) -> Option<(usize, usize)> {
    let m = text.len();
    debug_assert_eq!(sa.len(), m);
    if m == 0 || u.is_empty() {
        return None;
    }
    let pref = |suf: usize| -> &[u8] {
        let start = suf - 1;
        &text[start..m.min(start + u.len())]
    };

    // Leftmost suffix whose clamped prefix equals u. The empty slice stands in
    // for the suffix below index 1 and compares less than any non-empty u.
    let mut low = None;
    let (mut l, mut r) = (1usize, m);
    while l <= r {
        let mid = l + (r - l) / 2;
        let cmp = emu.qcompare(pref(sa[mid - 1]), u);
        if cmp == Ordering::Equal {
            let before = if mid == 1 { &[][..] } else { pref(sa[mid - 2]) };
            if emu.qcompare(before, u) == Ordering::Less {
                low = Some(mid);
                break;
            }
        }
        if cmp == Ordering::Less {
            l = mid + 1;
        } else {
            r = mid - 1;
        }
    }
    let low = low?;

    // Rightmost such suffix. The position above index m counts as greater
    // than u without a comparison call.
    let mut high = None;
    let (mut l, mut r) = (1usize, m);
    while l <= r {
        let mid = l + (r - l) / 2;
        let cmp = emu.qcompare(pref(sa[mid - 1]), u);
        if cmp == Ordering::Equal {
            let after = if mid == m {
                Ordering::Greater
            } else {
                emu.qcompare(pref(sa[mid]), u)
            };
            if after == Ordering::Greater {
                high = Some(mid);
                break;
            }
        }
        if cmp == Ordering::Greater {
            r = mid - 1;
        } else {
            l = mid + 1;
        }
    }
    // Exact comparisons make the second search succeed whenever the first one
    // did; under noise they can disagree, and the range counts as absent.
    let high = high?;
    Some((low, high))
}

// ---------------------------------------------------------------------------
// Longest-match array
// ---------------------------------------------------------------------------

/// Builds the longest-match array for the instance.
///
/// One range update per dictionary string over its suffix range, a single
/// push, then a permutation from suffix-array order back to text order.
pub fn build_long(inst: &TAOInstance, emu: &mut Emulator) -> Result<LongArray> {
    let text = inst.text();
    let m = text.len();
    let sa = suffix_array(text);
    let mut tree = SegmentTree::construct(&vec![(0, -1); m])?;
    for (j, s) in inst.dict().iter().enumerate() {
        let Some((low, high)) = search_segment(text, &sa, s, emu) else {
            continue;
        };
        tree.update(low, high, s.len() as i64, (j + 1) as i64)?;
    }
    tree.push();
    let mut values = vec![-1i64; m];
    for (i, &suf) in sa.iter().enumerate() {
        let (g, d) = tree.request(i + 1)?;
        if g > 0 {
            values[suf - 1] = d;
        }
    }
    Ok(LongArray { values })
}

/// Longest-match array by direct per-position scanning; ties on length keep
/// the earliest dictionary index, as the tree does.
pub fn naive_long(inst: &TAOInstance) -> LongArray {
    let text = inst.text();
    let m = text.len();
    let mut values = vec![-1i64; m];
    for p in 1..=m {
        let mut best_len = 0usize;
        for (j, s) in inst.dict().iter().enumerate() {
            let end = p + s.len() - 1;
            if end <= m && s.len() > best_len && &text[p - 1..end] == s.as_slice() {
                best_len = s.len();
                values[p - 1] = (j + 1) as i64;
            }
        }
    }
    LongArray { values }
}

// ---------------------------------------------------------------------------
// Greedy decomposition
// ---------------------------------------------------------------------------

/// Greedily decomposes the text using the longest-match array.
///
/// Each round scans the window of start positions reachable from the current
/// cover and picks the match reaching furthest; earliest start wins ties.
/// Returns `None` when no candidate extends the cover.
pub fn construct_qi(long: &LongArray, inst: &TAOInstance) -> Option<Assembly> {
    let m = inst.text_len();
    debug_assert_eq!(long.values.len(), m);
    let piece_len = |v: i64| inst.dict()[(v - 1) as usize].len();

    let first = long.values[0];
    if first <= 0 {
        return None;
    }
    let mut starts = vec![1usize];
    let mut indices = vec![first as usize];
    let mut covered = piece_len(first);
    let mut left = 2usize;
    let mut right = covered + 1;
    while covered < m {
        let mut max_q = 0usize;
        let mut max_i = 0usize;
        for j in left..=right.min(m) {
            let v = long.values[j - 1];
            if v > 0 {
                let end = j + piece_len(v) - 1;
                if end > max_q {
                    max_q = end;
                    max_i = j;
                }
            }
        }
        if max_q == 0 || max_q < right {
            return None;
        }
        starts.push(max_i);
        indices.push(long.values[max_i - 1] as usize);
        covered = max_q;
        left = right + 1;
        right = max_q + 1;
    }
    Some(Assembly { starts, indices })
}

/// Runs the full pipeline: longest-match array, then greedy decomposition.
pub fn assemble(inst: &TAOInstance, emu: &mut Emulator) -> Result<Assembly> {
    let long = build_long(inst, emu)?;
    construct_qi(&long, inst)
        .ok_or_else(|| Error::infeasible("the text cannot be assembled from the dictionary"))
}

// ---------------------------------------------------------------------------
// Oracles and validation
// ---------------------------------------------------------------------------

/// Decides feasibility by dynamic programming over covered prefixes and
/// returns a witness assembly when feasible.
///
/// Refuses instances whose match table would exceed the comparison budget.
pub fn feasibility_oracle(inst: &TAOInstance) -> Result<Option<Assembly>> {
    let text = inst.text();
    let m = text.len();
    let work = (m as u64).saturating_mul(inst.total_dict_len() as u64);
    if work > ORACLE_BUDGET {
        return Err(Error::budget(format!(
            "feasibility oracle needs about {} symbol comparisons, cap is {}",
            work, ORACLE_BUDGET
        )));
    }

    // best_end[p]: furthest end of a dictionary match starting at p, keeping
    // the earliest dictionary index among the longest matches.
    let mut best_end = vec![0usize; m + 2];
    let mut best_idx = vec![0usize; m + 2];
    for p in 1..=m {
        for (j, s) in inst.dict().iter().enumerate() {
            let end = p + s.len() - 1;
            if end <= m && end > best_end[p] && &text[p - 1..end] == s.as_slice() {
                best_end[p] = end;
                best_idx[p] = j + 1;
            }
        }
    }

    let mut starts = Vec::new();
    let mut indices = Vec::new();
    let mut reach = 0usize;
    let mut next = 1usize;
    while reach < m {
        let mut best = reach;
        let mut best_p = 0usize;
        for p in next..=reach + 1 {
            if best_end[p] > best {
                best = best_end[p];
                best_p = p;
            }
        }
        if best_p == 0 {
            return Ok(None);
        }
        starts.push(best_p);
        indices.push(best_idx[best_p]);
        next = reach + 2;
        reach = best;
    }
    Ok(Some(Assembly { starts, indices }))
}

/// Checks the four decomposition invariants literally.
pub fn validate_assembly(inst: &TAOInstance, asm: &Assembly) -> bool {
    let text = inst.text();
    let m = text.len();
    let n = inst.dict_len();
    let r = asm.starts.len();
    if r == 0 || asm.indices.len() != r {
        return false;
    }
    if asm.starts[0] != 1 {
        return false;
    }
    for k in 0..r {
        let q = asm.starts[k];
        let i = asm.indices[k];
        if q < 1 || i < 1 || i > n {
            return false;
        }
        let s = &inst.dict()[i - 1];
        let end = q + s.len() - 1;
        if end > m || &text[q - 1..end] != s.as_slice() {
            return false;
        }
        if k > 0 {
            let prev_end = asm.starts[k - 1] + inst.dict()[asm.indices[k - 1] - 1].len() - 1;
            if q > prev_end + 1 {
                return false;
            }
        }
    }
    let last = r - 1;
    asm.starts[last] + inst.dict()[asm.indices[last] - 1].len() - 1 == m
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsim;
    use proptest::prelude::*;

    fn exact() -> Emulator {
        Emulator::exact()
    }

    #[test]
    fn search_segment_finds_the_banana_ranges() {
        let text = b"banana";
        let sa = suffix_array(text);
        let mut emu = exact();
        assert_eq!(search_segment(text, &sa, b"an", &mut emu), Some((2, 3)));
        assert_eq!(search_segment(text, &sa, b"z", &mut emu), None);
        assert_eq!(search_segment(text, &sa, b"banana", &mut emu), Some((4, 4)));
    }

    #[test]
    fn search_segment_spans_all_suffixes_on_a_run() {
        let text = b"aaa";
        let sa = suffix_array(text);
        let mut emu = exact();
        assert_eq!(search_segment(text, &sa, b"a", &mut emu), Some((1, 3)));
        assert_eq!(search_segment(text, &sa, b"aa", &mut emu), Some((2, 3)));
    }

    #[test]
    fn search_segment_rejects_patterns_longer_than_the_text() {
        let text = b"ab";
        let sa = suffix_array(text);
        let mut emu = exact();
        assert_eq!(search_segment(text, &sa, b"abc", &mut emu), None);
    }

    #[test]
    fn build_long_matches_the_worked_examples() {
        let mut emu = exact();
        let inst = TAOInstance::from_strs("aba", &["ab", "a"]).unwrap();
        assert_eq!(build_long(&inst, &mut emu).unwrap().values(), &[1, -1, 2]);

        let inst = TAOInstance::from_strs("ababab", &["ab", "ba"]).unwrap();
        assert_eq!(
            build_long(&inst, &mut emu).unwrap().values(),
            &[1, 2, 1, 2, 1, -1]
        );

        let inst = TAOInstance::from_strs("xyz", &["ab"]).unwrap();
        assert_eq!(build_long(&inst, &mut emu).unwrap().values(), &[-1, -1, -1]);
    }

    #[test]
    fn construct_qi_matches_the_worked_examples() {
        let inst = TAOInstance::from_strs("aba", &["ab", "a"]).unwrap();
        let asm = construct_qi(&LongArray::from_values(vec![1, -1, 2]), &inst).unwrap();
        assert_eq!(asm.starts, vec![1, 3]);
        assert_eq!(asm.indices, vec![1, 2]);

        let inst = TAOInstance::from_strs("ababab", &["ab", "ba"]).unwrap();
        let asm = construct_qi(&LongArray::from_values(vec![1, 2, 1, 2, 1, -1]), &inst).unwrap();
        assert_eq!(asm.starts, vec![1, 3, 5]);
        assert_eq!(asm.indices, vec![1, 1, 1]);

        let inst = TAOInstance::from_strs("abc", &["ab"]).unwrap();
        assert_eq!(
            construct_qi(&LongArray::from_values(vec![1, -1, -1]), &inst),
            None
        );
    }

    #[test]
    fn assemble_covers_the_feasible_examples() {
        let mut emu = exact();
        let inst = TAOInstance::from_strs("ababab", &["ab", "ba"]).unwrap();
        let asm = assemble(&inst, &mut emu).unwrap();
        assert!(validate_assembly(&inst, &asm));

        let inst = TAOInstance::from_strs("hello", &["hello"]).unwrap();
        let asm = assemble(&inst, &mut emu).unwrap();
        assert_eq!(asm.starts, vec![1]);
        assert_eq!(asm.indices, vec![1]);

        let inst = TAOInstance::from_strs("aaa", &["a"]).unwrap();
        let asm = assemble(&inst, &mut emu).unwrap();
        assert_eq!(asm.starts, vec![1, 2, 3]);
        assert_eq!(asm.indices, vec![1, 1, 1]);
    }

    #[test]
    fn assemble_reports_infeasibility() {
        let mut emu = exact();
        let inst = TAOInstance::from_strs("abc", &["ab"]).unwrap();
        assert!(matches!(
            assemble(&inst, &mut emu),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn assemble_charges_comparison_queries() {
        let mut emu = exact();
        let inst = TAOInstance::from_strs("ababab", &["ab", "ba"]).unwrap();
        assemble(&inst, &mut emu).unwrap();
        let entry = emu.ledger.get(qsim::QCOMPARE);
        assert!(entry.calls > 0);
        assert!(entry.quantum_cost > 0.0);
    }

    #[test]
    fn oracle_agrees_on_the_worked_examples() {
        let feasible = TAOInstance::from_strs("ababab", &["ab", "ba"]).unwrap();
        let witness = feasibility_oracle(&feasible).unwrap().unwrap();
        assert!(validate_assembly(&feasible, &witness));

        let single = TAOInstance::from_strs("hello", &["hello"]).unwrap();
        let witness = feasibility_oracle(&single).unwrap().unwrap();
        assert_eq!(witness.starts, vec![1]);

        let gap = TAOInstance::from_strs("abc", &["ab"]).unwrap();
        assert_eq!(feasibility_oracle(&gap).unwrap(), None);
    }

    #[test]
    fn oracle_refuses_oversized_instances() {
        let inst = TAOInstance::new(vec![b'a'; 10_000], vec![vec![b'a'; 1_001]]).unwrap();
        assert!(matches!(feasibility_oracle(&inst), Err(Error::Budget(_))));
    }

    #[test]
    fn validate_assembly_rejects_broken_decompositions() {
        let inst = TAOInstance::from_strs("ababab", &["ab", "ba"]).unwrap();
        let good = Assembly {
            starts: vec![1, 3, 5],
            indices: vec![1, 1, 1],
        };
        assert!(validate_assembly(&inst, &good));

        let gap = Assembly {
            starts: vec![1, 5],
            indices: vec![1, 1],
        };
        assert!(!validate_assembly(&inst, &gap));

        let wrong_content = Assembly {
            starts: vec![1, 2, 5],
            indices: vec![1, 1, 1],
        };
        assert!(!validate_assembly(&inst, &wrong_content));

        let short_tail = Assembly {
            starts: vec![1, 3],
            indices: vec![1, 1],
        };
        assert!(!validate_assembly(&inst, &short_tail));

        let not_from_start = Assembly {
            starts: vec![3, 5],
            indices: vec![1, 1],
        };
        assert!(!validate_assembly(&inst, &not_from_start));
    }

    #[test]
    fn long_array_accessors_check_bounds() {
        let long = LongArray::from_values(vec![1, -1]);
        assert_eq!(long.get(1).unwrap(), 1);
        assert_eq!(long.get(2).unwrap(), -1);
        assert!(long.get(0).is_err());
        assert!(long.get(3).is_err());
    }

    fn text_strategy() -> impl Strategy<Value = Vec<u8>> {
        proptest::collection::vec(prop_oneof![Just(b'a'), Just(b'b')], 1..40)
    }

    fn dict_strategy() -> impl Strategy<Value = Vec<Vec<u8>>> {
        proptest::collection::vec(
            proptest::collection::vec(prop_oneof![Just(b'a'), Just(b'b')], 1..5),
            0..6,
        )
    }

    proptest! {
        #[test]
        fn tree_long_matches_naive_long(text in text_strategy(), dict in dict_strategy()) {
            let inst = TAOInstance::new(text, dict).unwrap();
            let mut emu = exact();
            let fast = build_long(&inst, &mut emu).unwrap();
            prop_assert_eq!(fast, naive_long(&inst));
        }

        #[test]
        fn assemble_agrees_with_the_feasibility_oracle(
            text in text_strategy(),
            dict in dict_strategy(),
        ) {
            let inst = TAOInstance::new(text, dict).unwrap();
            let mut emu = exact();
            let got = assemble(&inst, &mut emu);
            match feasibility_oracle(&inst).unwrap() {
                Some(witness) => {
                    let asm = got.unwrap();
                    prop_assert!(validate_assembly(&inst, &asm));
                    prop_assert!(validate_assembly(&inst, &witness));
                    prop_assert_eq!(asm, witness);
                }
                None => {
                    prop_assert!(matches!(got, Err(Error::Infeasible(_))));
                }
            }
        }

        #[test]
        fn search_segment_matches_a_linear_scan(
            text in text_strategy(),
            u in proptest::collection::vec(prop_oneof![Just(b'a'), Just(b'b')], 1..6),
        ) {
            let sa = suffix_array(&text);
            let m = text.len();
            let matches: Vec<usize> = (1..=m)
                .filter(|&i| {
                    let suf = &text[sa[i - 1] - 1..];
                    suf.len() >= u.len() && &suf[..u.len()] == u.as_slice()
                })
                .collect();
            let expected = if matches.is_empty() {
                None
            } else {
                Some((matches[0], *matches.last().unwrap()))
            };
            let mut emu = exact();
            prop_assert_eq!(search_segment(&text, &sa, &u, &mut emu), expected);
        }

        #[test]
        fn planted_instances_assemble(
            pieces in proptest::collection::vec(
                proptest::collection::vec(prop_oneof![Just(b'a'), Just(b'b')], 1..5),
                1..8,
            ),
            seed in 0u64..1000,
        ) {
            // Chain the pieces, overlapping only where the existing tail
            // already equals the piece's prefix, so no piece is clobbered and
            // the text stays feasible by construction.
            let mut text = pieces[0].clone();
            for (k, p) in pieces.iter().enumerate().skip(1) {
                let covered = text.len();
                let valid: Vec<usize> = (0..=p.len().min(covered))
                    .filter(|&b| text[covered - b..] == p[..b])
                    .collect();
                let back = valid[(seed as usize + k) % valid.len()];
                text.extend_from_slice(&p[back..]);
            }
            let inst = TAOInstance::new(text, pieces).unwrap();
            let mut emu = exact();
            let asm = assemble(&inst, &mut emu).unwrap();
            prop_assert!(validate_assembly(&inst, &asm));
        }
    }
}
