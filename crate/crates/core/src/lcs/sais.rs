//! Linear-time suffix array construction (SA-IS) and Kasai LCP.

const EMPTY: u32 = u32::MAX;

/// Suffix array of `text` over the integer alphabet `0..alphabet_size`.
///
/// The last symbol must be `0` and must not occur anywhere else.
pub(crate) fn suffix_array(text: &[u32], alphabet_size: usize) -> Vec<u32> {
    debug_assert!(text.last() == Some(&0));
    debug_assert!(text[..text.len().saturating_sub(1)].iter().all(|&c| c != 0));
    debug_assert!(text.iter().all(|&c| (c as usize) < alphabet_size));
    assert!(text.len() < EMPTY as usize, "text too long for 32-bit suffix indices");
    sais(text, alphabet_size)
}

fn bucket_heads(counts: &[u32]) -> Vec<u32> {
    let mut sum = 0;
    counts
        .iter()
        .map(|&c| {
            let h = sum;
            sum += c;
            h
        })
        .collect()
}

fn bucket_tails(counts: &[u32]) -> Vec<u32> {
    let mut sum = 0;
    counts
        .iter()
        .map(|&c| {
            sum += c;
            sum
        })
        .collect()
}

fn induce(text: &[u32], sa: &mut [u32], stype: &[bool], counts: &[u32], lms_sorted: &[u32]) {
    sa.fill(EMPTY);
    let mut tails = bucket_tails(counts);
    for &p in lms_sorted.iter().rev() {
        let c = text[p as usize] as usize;
        tails[c] -= 1;
        sa[tails[c] as usize] = p;
    }

    let mut heads = bucket_heads(counts);
    for i in 0..sa.len() {
        let j = sa[i];
        if j != EMPTY && j > 0 && !stype[j as usize - 1] {
            let c = text[j as usize - 1] as usize;
            sa[heads[c] as usize] = j - 1;
            heads[c] += 1;
        }
    }

    let mut tails = bucket_tails(counts);
    for i in (0..sa.len()).rev() {
        let j = sa[i];
        if j != EMPTY && j > 0 && stype[j as usize - 1] {
            let c = text[j as usize - 1] as usize;
            tails[c] -= 1;
            sa[tails[c] as usize] = j - 1;
        }
    }
}

fn sais(text: &[u32], alphabet_size: usize) -> Vec<u32> {
    let n = text.len();
    match n {
        0 => return Vec::new(),
        1 => return vec![0],
        _ => {}
    }

    let mut stype = vec![false; n];
    stype[n - 1] = true;
    for i in (0..n - 1).rev() {
        stype[i] = text[i] < text[i + 1] || (text[i] == text[i + 1] && stype[i + 1]);
    }
    let is_lms = |i: usize| i > 0 && stype[i] && !stype[i - 1];

    let mut counts = vec![0u32; alphabet_size];
    for &c in text {
        counts[c as usize] += 1;
    }

    let lms: Vec<u32> = (1..n).filter(|&i| is_lms(i)).map(|i| i as u32).collect();
    let mut sa = vec![EMPTY; n];
    induce(text, &mut sa, &stype, &counts, &lms);

    // Name the LMS substrings in their induced order.
    let sorted_lms: Vec<u32> = sa.iter().copied().filter(|&p| is_lms(p as usize)).collect();
    let lms_equal = |a: usize, b: usize| -> bool {
        let mut d = 0;
        loop {
            if text[a + d] != text[b + d] || stype[a + d] != stype[b + d] {
                return false;
            }
            if d > 0 {
                let (ea, eb) = (is_lms(a + d), is_lms(b + d));
                if ea || eb {
                    return ea && eb;
                }
            }
            d += 1;
        }
    };
    let mut name_at = vec![EMPTY; n];
    let mut names = 0u32;
    let mut prev: Option<usize> = None;
    for &p in &sorted_lms {
        let p = p as usize;
        if prev.is_none_or(|q| !lms_equal(p, q)) {
            names += 1;
        }
        prev = Some(p);
        name_at[p] = names - 1;
    }

    let lms_order: Vec<u32> = if names as usize == lms.len() {
        sorted_lms
    } else {
        let reduced: Vec<u32> = lms.iter().map(|&p| name_at[p as usize]).collect();
        drop(name_at);
        let reduced_sa = sais(&reduced, names as usize);
        reduced_sa.iter().map(|&i| lms[i as usize]).collect()
    };
    induce(text, &mut sa, &stype, &counts, &lms_order);
    sa
}

/// `lcp[i]` is the longest common prefix of the suffixes at `sa[i - 1]` and
/// `sa[i]`; `lcp[0] = 0`.
pub(crate) fn lcp_array(text: &[u32], sa: &[u32]) -> Vec<u32> {
    let n = text.len();
    let mut rank = vec![0u32; n];
    for (i, &p) in sa.iter().enumerate() {
        rank[p as usize] = i as u32;
    }
    let mut lcp = vec![0u32; n];
    let mut h = 0usize;
    for p in 0..n {
        let r = rank[p] as usize;
        if r == 0 {
            h = 0;
            continue;
        }
        let q = sa[r - 1] as usize;
        while p + h < n && q + h < n && text[p + h] == text[q + h] {
            h += 1;
        }
        lcp[r] = h as u32;
        h = h.saturating_sub(1);
    }
    lcp
}
