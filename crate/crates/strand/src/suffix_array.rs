//! Suffix array construction in linear time via induced sorting, with a
//! quadratic comparison sort kept alongside as a differential oracle.
//!
//! Positions are one-based throughout: entry q of the result is the start
//! of the q-th smallest suffix.

const EMPTY: usize = usize::MAX;

/// Sorted suffix starts of `text`, one-based, built by induced sorting.
pub fn suffix_array(text: &[u8]) -> Vec<usize> {
    if text.is_empty() {
        return Vec::new();
    }
    // Shift bytes up to reserve 0 for the terminating sentinel.
    let mut s: Vec<usize> = text.iter().map(|&b| b as usize + 1).collect();
    s.push(0);
    let sa = sais(&s, 258);
    sa.into_iter()
        .filter(|&p| p < text.len())
        .map(|p| p + 1)
        .collect()
}

/// Reference implementation: sort suffix slices directly.
pub fn naive_suffix_sort(text: &[u8]) -> Vec<usize> {
    let mut idx: Vec<usize> = (1..=text.len()).collect();
    idx.sort_by(|&a, &b| text[a - 1..].cmp(&text[b - 1..]));
    idx
}

fn bucket_sizes(s: &[usize], k: usize) -> Vec<usize> {
    let mut sizes = vec![0usize; k];
    for &c in s {
        sizes[c] += 1;
    }
    sizes
}

fn bucket_heads(sizes: &[usize]) -> Vec<usize> {
    let mut heads = vec![0usize; sizes.len()];
    let mut sum = 0;
    for (c, &sz) in sizes.iter().enumerate() {
        heads[c] = sum;
        sum += sz;
    }
    heads
}

fn bucket_tails(sizes: &[usize]) -> Vec<usize> {
    let mut tails = vec![0usize; sizes.len()];
    let mut sum = 0;
    for (c, &sz) in sizes.iter().enumerate() {
        sum += sz;
        tails[c] = sum;
    }
    tails
}

/// One induced-sorting round: seed the given left-most S-type positions at
/// bucket tails, then induce L-types left to right and S-types right to
/// left.
fn induce(s: &[usize], is_s: &[bool], sizes: &[usize], lms: &[usize]) -> Vec<usize> {
    let n = s.len();
    let mut sa = vec![EMPTY; n];
    let mut tails = bucket_tails(sizes);
    for &j in lms.iter().rev() {
        let c = s[j];
        tails[c] -= 1;
        sa[tails[c]] = j;
    }
    let mut heads = bucket_heads(sizes);
    for i in 0..n {
        let j = sa[i];
        if j != EMPTY && j > 0 && !is_s[j - 1] {
            let c = s[j - 1];
            sa[heads[c]] = j - 1;
            heads[c] += 1;
        }
    }
    let mut tails = bucket_tails(sizes);
    for i in (0..n).rev() {
        let j = sa[i];
        if j != EMPTY && j > 0 && is_s[j - 1] {
            let c = s[j - 1];
            tails[c] -= 1;
            sa[tails[c]] = j - 1;
        }
    }
    sa
}

fn lms_substrings_equal(s: &[usize], is_s: &[bool], a: usize, b: usize) -> bool {
    let n = s.len();
    let is_lms = |i: usize| i > 0 && is_s[i] && !is_s[i - 1];
    if a == n - 1 || b == n - 1 {
        return a == b;
    }
    let mut i = 0;
    loop {
        let a_end = i > 0 && is_lms(a + i);
        let b_end = i > 0 && is_lms(b + i);
        if a_end && b_end {
            return true;
        }
        if a_end != b_end || s[a + i] != s[b + i] || is_s[a + i] != is_s[b + i] {
            return false;
        }
        i += 1;
    }
}

/// Core recursion over an integer string whose last element is the unique
/// smallest sentinel.
fn sais(s: &[usize], k: usize) -> Vec<usize> {
    let n = s.len();
    if n == 1 {
        return vec![0];
    }
    let mut is_s = vec![false; n];
    is_s[n - 1] = true;
    for i in (0..n - 1).rev() {
        is_s[i] = s[i] < s[i + 1] || (s[i] == s[i + 1] && is_s[i + 1]);
    }
    let lms_text_order: Vec<usize> = (1..n).filter(|&i| is_s[i] && !is_s[i - 1]).collect();
    let sizes = bucket_sizes(s, k);

    // First round with left-most S positions in text order yields them in
    // sorted LMS-substring order.
    let rough = induce(s, &is_s, &sizes, &lms_text_order);
    let sorted_lms: Vec<usize> = rough
        .into_iter()
        .filter(|&j| j > 0 && is_s[j] && !is_s[j - 1])
        .collect();

    // Name the left-most S substrings in sorted order.
    let mut name_of = vec![EMPTY; n];
    let mut names = 0usize;
    let mut prev = EMPTY;
    for &j in &sorted_lms {
        if prev != EMPTY && !lms_substrings_equal(s, &is_s, prev, j) {
            names += 1;
        }
        name_of[j] = names;
        prev = j;
    }
    names += 1;

    // Order the left-most S suffixes, recursing only on repeated names.
    let reduced: Vec<usize> = lms_text_order.iter().map(|&j| name_of[j]).collect();
    let lms_sorted_final: Vec<usize> = if names == lms_text_order.len() {
        let mut order = vec![0usize; reduced.len()];
        for (pos, &name) in reduced.iter().enumerate() {
            order[name] = lms_text_order[pos];
        }
        order
    } else {
        let sub = sais(&reduced, names);
        sub.into_iter().map(|r| lms_text_order[r]).collect()
    };

    induce(s, &is_s, &sizes, &lms_sorted_final)
}
