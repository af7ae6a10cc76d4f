//! Suffix array construction by induced sorting (SA-IS).
//!
//! Runs in O(n) time and, beyond the output, uses one u32 per input byte
//! for the working array plus transient arrays for the recursion, so a
//! desk-scale shard builds comfortably in memory. The implementation
//! appends a virtual sentinel smaller than every byte (input bytes are
//! shifted up by one), which keeps the classic invariant — the text ends
//! with a unique smallest character — without copying the input.
//!
//! The algorithm, briefly: classify each suffix as S-type (smaller than
//! its right neighbor) or L-type; the leftmost S-type positions (LMS) cut
//! the text into LMS substrings. Sorting all suffixes reduces to sorting
//! the LMS suffixes, which reduces to a suffix-array problem over the
//! "names" of the LMS substrings — a string at most half as long — after
//! which two linear induction sweeps place the L-type and S-type suffixes.

/// Build the suffix array of `text`: all suffix start offsets, sorted by
/// lexicographic byte order of the suffixes. Deterministic; the empty text
/// yields an empty array.
///
/// Panics if the text length does not fit the u32 working arrays
/// (construction is bounded at 4 GiB − 2 bytes, far above shard scale).
pub fn suffix_array(text: &[u8]) -> Vec<u64> {
    let n = text.len();
    if n == 0 {
        return Vec::new();
    }
    assert!(
        n < (u32::MAX - 1) as usize,
        "text too large for u32 suffix sorting: {n} bytes"
    );
    // One extra slot for the virtual sentinel, which always sorts first.
    let mut sa = vec![EMPTY; n + 1];
    sais(&ShiftedBytes(text), 257, &mut sa);
    debug_assert_eq!(sa[0] as usize, n, "virtual sentinel must sort first");
    sa[1..].iter().map(|&p| p as u64).collect()
}

const EMPTY: u32 = u32::MAX;

/// Text abstraction so the byte level and the recursion level share one
/// implementation. `at` returns values in `0..sigma` and the last
/// character is the unique smallest (the sentinel).
trait Text {
    fn len(&self) -> usize;
    fn at(&self, i: usize) -> usize;
}

/// Input bytes shifted up by one, with a virtual 0 sentinel at the end.
struct ShiftedBytes<'a>(&'a [u8]);

impl Text for ShiftedBytes<'_> {
    fn len(&self) -> usize {
        self.0.len() + 1
    }

    #[inline]
    fn at(&self, i: usize) -> usize {
        if i < self.0.len() {
            self.0[i] as usize + 1
        } else {
            0
        }
    }
}

/// Reduced string of LMS-substring names used by the recursion.
struct Names<'a>(&'a [u32]);

impl Text for Names<'_> {
    fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    fn at(&self, i: usize) -> usize {
        self.0[i] as usize
    }
}

/// Suffix type classification: `true` = S-type (suffix sorts before its
/// right neighbor), `false` = L-type.
fn classify<T: Text>(t: &T) -> Vec<bool> {
    let n = t.len();
    let mut stype = vec![false; n];
    stype[n - 1] = true; // the sentinel suffix is S-type by definition
    for i in (0..n - 1).rev() {
        let (a, b) = (t.at(i), t.at(i + 1));
        stype[i] = a < b || (a == b && stype[i + 1]);
    }
    stype
}

#[inline]
fn is_lms(stype: &[bool], i: usize) -> bool {
    i > 0 && stype[i] && !stype[i - 1]
}

fn bucket_counts<T: Text>(t: &T, sigma: usize) -> Vec<u32> {
    let mut counts = vec![0u32; sigma];
    for i in 0..t.len() {
        counts[t.at(i)] += 1;
    }
    counts
}

/// First slot of each bucket (exclusive prefix sums).
fn bucket_heads(counts: &[u32]) -> Vec<u32> {
    let mut heads = Vec::with_capacity(counts.len());
    let mut sum = 0u32;
    for &c in counts {
        heads.push(sum);
        sum += c;
    }
    heads
}

/// One past the last slot of each bucket (inclusive prefix sums).
fn bucket_tails(counts: &[u32]) -> Vec<u32> {
    let mut tails = Vec::with_capacity(counts.len());
    let mut sum = 0u32;
    for &c in counts {
        sum += c;
        tails.push(sum);
    }
    tails
}

/// Left-to-right sweep placing L-type predecessors at bucket heads.
fn induce_l<T: Text>(t: &T, sa: &mut [u32], counts: &[u32], stype: &[bool]) {
    let mut heads = bucket_heads(counts);
    for i in 0..sa.len() {
        let p = sa[i];
        if p == EMPTY || p == 0 {
            continue;
        }
        let j = p as usize - 1;
        if !stype[j] {
            let c = t.at(j);
            sa[heads[c] as usize] = j as u32;
            heads[c] += 1;
        }
    }
}

/// Right-to-left sweep placing S-type predecessors at bucket tails.
fn induce_s<T: Text>(t: &T, sa: &mut [u32], counts: &[u32], stype: &[bool]) {
    let mut tails = bucket_tails(counts);
    for i in (0..sa.len()).rev() {
        let p = sa[i];
        if p == EMPTY || p == 0 {
            continue;
        }
        let j = p as usize - 1;
        if stype[j] {
            let c = t.at(j);
            tails[c] -= 1;
            sa[tails[c] as usize] = j as u32;
        }
    }
}

/// Are the LMS substrings starting at `a` and `b` identical (same
/// characters and same type pattern, through their terminating LMS
/// position)?
fn lms_substrings_equal<T: Text>(t: &T, stype: &[bool], a: usize, b: usize) -> bool {
    if a == b {
        return true;
    }
    let n = t.len();
    let mut offset = 0;
    loop {
        let (pa, pb) = (a + offset, b + offset);
        // The sentinel occurs once, so running off the end means inequality.
        if pa >= n || pb >= n {
            return false;
        }
        if t.at(pa) != t.at(pb) || stype[pa] != stype[pb] {
            return false;
        }
        if offset > 0 && (is_lms(stype, pa) || is_lms(stype, pb)) {
            return is_lms(stype, pa) && is_lms(stype, pb);
        }
        offset += 1;
    }
}

/// Core SA-IS over a sentinel-terminated text with alphabet size `sigma`.
/// `sa` must have length `t.len()` and is fully overwritten.
fn sais<T: Text>(t: &T, sigma: usize, sa: &mut [u32]) {
    let n = t.len();
    debug_assert_eq!(sa.len(), n);
    if n == 1 {
        sa[0] = 0;
        return;
    }
    let stype = classify(t);
    let counts = bucket_counts(t, sigma);

    // Pass 1: seed the (unsorted) LMS positions at their bucket tails and
    // induce. Afterwards the LMS suffixes appear in the order of their LMS
    // substrings.
    sa.fill(EMPTY);
    {
        let mut tails = bucket_tails(&counts);
        for i in 1..n {
            if is_lms(&stype, i) {
                let c = t.at(i);
                tails[c] -= 1;
                sa[tails[c] as usize] = i as u32;
            }
        }
    }
    induce_l(t, sa, &counts, &stype);
    induce_s(t, sa, &counts, &stype);

    // Compact the LMS positions, now sorted by LMS substring, to the front.
    // Induction fills every slot, so no EMPTY survives here.
    let mut n_lms = 0;
    for i in 0..n {
        let p = sa[i];
        debug_assert_ne!(p, EMPTY, "induction must fill every slot");
        if p != EMPTY && is_lms(&stype, p as usize) {
            sa[n_lms] = p;
            n_lms += 1;
        }
    }

    // Name each LMS substring; equal substrings share a name. Names are
    // assigned in sorted order, so they are already ranks.
    let mut name_of = vec![EMPTY; n / 2 + 1];
    let mut name = 0u32;
    let mut previous: Option<usize> = None;
    for idx in 0..n_lms {
        let pos = sa[idx] as usize;
        if let Some(prev) = previous {
            if !lms_substrings_equal(t, &stype, prev, pos) {
                name += 1;
            }
        }
        name_of[pos / 2] = name;
        previous = Some(pos);
    }
    let distinct = if n_lms == 0 { 0 } else { name as usize + 1 };

    // Reduced problem: LMS names in text order.
    let lms_positions: Vec<u32> = (1..n).filter(|&i| is_lms(&stype, i)).map(|i| i as u32).collect();
    debug_assert_eq!(lms_positions.len(), n_lms);
    let reduced: Vec<u32> = lms_positions
        .iter()
        .map(|&p| name_of[p as usize / 2])
        .collect();
    drop(name_of);

    // Order of LMS suffixes: direct when all names are distinct, otherwise
    // by recursing on the reduced string.
    let lms_order: Vec<u32> = if distinct == n_lms {
        let mut order = vec![0u32; n_lms];
        for (i, &name) in reduced.iter().enumerate() {
            order[name as usize] = i as u32;
        }
        order
    } else {
        let mut sub_sa = vec![EMPTY; n_lms];
        sais(&Names(&reduced), distinct, &mut sub_sa);
        sub_sa
    };
    drop(reduced);

    // Pass 2: seed the now fully sorted LMS suffixes at bucket tails
    // (right-to-left so tail decrements keep them in order) and induce.
    sa.fill(EMPTY);
    {
        let mut tails = bucket_tails(&counts);
        for &ord in lms_order.iter().rev() {
            let pos = lms_positions[ord as usize];
            let c = t.at(pos as usize);
            tails[c] -= 1;
            sa[tails[c] as usize] = pos;
        }
    }
    induce_l(t, sa, &counts, &stype);
    induce_s(t, sa, &counts, &stype);
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force oracle: sort all suffixes.
    fn naive(text: &[u8]) -> Vec<u64> {
        let mut sa: Vec<u64> = (0..text.len() as u64).collect();
        sa.sort_by(|&a, &b| text[a as usize..].cmp(&text[b as usize..]));
        sa
    }

    #[test]
    fn empty_text() {
        assert!(suffix_array(b"").is_empty());
    }

    #[test]
    fn single_byte() {
        assert_eq!(suffix_array(b"a"), vec![0]);
        assert_eq!(suffix_array(&[0u8]), vec![0]);
    }

    #[test]
    fn banana_with_sentinel() {
        // Hand-derived: suffixes of "banana\0" sorted are
        // "\0"(6) < "a\0"(5) < "ana\0"(3) < "anana\0"(1) < "banana\0"(0)
        // < "na\0"(4) < "nana\0"(2).
        assert_eq!(suffix_array(b"banana\x00"), vec![6, 5, 3, 1, 0, 4, 2]);
    }

    #[test]
    fn banana_without_sentinel() {
        assert_eq!(suffix_array(b"banana"), naive(b"banana"));
    }

    #[test]
    fn classic_hard_cases_match_naive() {
        let cases: &[&[u8]] = &[
            b"mmiissiissiippii",
            b"abracadabra",
            b"aaaaaaaaaa",
            b"abababab",
            b"baabaabac",
            b"yabbadabbado",
            b"\x00\x00\x00",
            b"b\x00a\x00nana\x00",
            b"the quick brown fox jumps over the lazy dog",
            b"\xff\xfe\xff\xfe\x00\x01",
        ];
        for &case in cases {
            assert_eq!(suffix_array(case), naive(case), "text {case:?}");
        }
    }

    #[test]
    fn all_256_bytes() {
        let text: Vec<u8> = (0..=255u8).rev().collect();
        assert_eq!(suffix_array(&text), naive(&text));
    }

    #[test]
    fn deterministic() {
        let text = b"determinism is non negotiable".repeat(50);
        assert_eq!(suffix_array(&text), suffix_array(&text));
    }
}
