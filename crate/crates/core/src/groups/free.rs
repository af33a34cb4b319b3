//! Reduced-word arithmetic for free groups.
//!
//! A word is a sequence of nonzero letters; letter `+k` is the k-th
//! generator (1-based) and `-k` its inverse. The canonical form is the
//! fully reduced word: no adjacent `x·x⁻¹` pair survives.

/// Reduces a raw letter sequence by cancelling adjacent inverse pairs.
pub fn reduce(letters: &[i16]) -> Vec<i16> {
    let mut out: Vec<i16> = Vec::with_capacity(letters.len());
    for &x in letters {
        if x == 0 {
            continue;
        }
        if out.last().is_some_and(|&y| y == -x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

/// Concatenates two reduced words, cancelling across the boundary.
pub fn mul(a: &[i16], b: &[i16]) -> Vec<i16> {
    let mut out = a.to_vec();
    for &x in b {
        if out.last().is_some_and(|&y| y == -x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

/// Inverse of a reduced word: reverse the letters and flip every sign.
pub fn inv(a: &[i16]) -> Vec<i16> {
    a.iter().rev().map(|&x| -x).collect()
}

/// True when the word contains no adjacent cancelling pair.
pub fn is_reduced(letters: &[i16]) -> bool {
    letters.windows(2).all(|w| w[0] != -w[1]) && !letters.contains(&0)
}
