//! Numerical-semigroup combinatorics: gap sets, Weierstrass weights, weight
//! lower bounds by exhaustive enumeration, and the Castelnuovo-Severi
//! arithmetic checker.
//!
//! Weight is `sum (k_i - i)` over the sorted gaps `k_1 < ... < k_g`, the
//! convention under which the total over a genus-g surface is `g^3 - g` and
//! a Weierstrass point is one of weight >= 1.

use crate::Error;

/// A numerical semigroup described by its gap data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemigroupRec {
    pub generators: Vec<u64>,
    pub gaps: Vec<u64>,
    pub genus: usize,
    pub weight: u64,
}

/// Build the semigroup generated by `gens` (gcd must be 1) and sieve its
/// gaps.
pub fn semigroup_from_generators(gens: &[u64]) -> Result<SemigroupRec, Error> {
    if gens.is_empty() || gens.iter().any(|&g| g == 0) {
        return Err(Error::Domain("generators must be positive".into()));
    }
    let g = gens.iter().copied().fold(0u64, num::integer::gcd);
    if g != 1 {
        return Err(Error::Domain(format!("gcd of generators is {g}, not 1")));
    }
    let mut gens = gens.to_vec();
    gens.sort_unstable();
    gens.dedup();
    // Frobenius number is below min(a*b) over coprime pairs; the crude bound
    // min*max is plenty at this scale.
    let bound = (gens[0] * *gens.last().unwrap()) as usize + 1;
    let mut reachable = vec![false; bound + 1];
    reachable[0] = true;
    for i in 1..=bound {
        for &gen in &gens {
            let gen = gen as usize;
            if gen <= i && reachable[i - gen] {
                reachable[i] = true;
                break;
            }
        }
    }
    let gaps: Vec<u64> = (1..=bound as u64)
        .filter(|&i| !reachable[i as usize])
        .collect();
    let genus = gaps.len();
    let weight = gaps
        .iter()
        .enumerate()
        .map(|(i, &k)| k - (i as u64 + 1))
        .sum();
    Ok(SemigroupRec {
        generators: gens,
        gaps,
        genus,
        weight,
    })
}

/// Weight computed the second way, summing positive-nongap counts below each
/// gap; cross-checks the `sum (k_i - i)` formula.
pub fn weight_by_nongap_deficits(rec: &SemigroupRec) -> u64 {
    let mut total = 0u64;
    for &k in &rec.gaps {
        let nongaps_below = (1..k).filter(|v| !rec.gaps.contains(v)).count() as u64;
        total += nongaps_below;
    }
    total
}

/// Minimum Weierstrass weight over all gap sets of size `genus` inside
/// `[1, 2*genus - 1]` whose complement is a monoid containing both members of
/// `must_contain`. Exhaustive enumeration; genus is capped at 8.
pub fn min_weight_containing(must_contain: (u64, u64), genus: usize) -> Result<u64, Error> {
    if genus == 0 || genus > 8 {
        return Err(Error::Domain(format!(
            "enumeration supports 1 <= genus <= 8, got {genus}"
        )));
    }
    let (a, b) = must_contain;
    if a == b {
        return Err(Error::Domain("the two required nongaps must differ".into()));
    }
    let top = 2 * genus as u64 - 1;
    let mut best: Option<u64> = None;
    let mut gaps = Vec::with_capacity(genus);
    search_gap_sets(1, top, genus, &mut gaps, (a, b), &mut best);
    best.ok_or_else(|| Error::Domain("no admissible gap set with the required nongaps".into()))
}

fn search_gap_sets(
    start: u64,
    top: u64,
    remaining: usize,
    gaps: &mut Vec<u64>,
    req: (u64, u64),
    best: &mut Option<u64>,
) {
    if remaining == 0 {
        if !valid_monoid_complement(gaps, top, req) {
            return;
        }
        let w: u64 = gaps
            .iter()
            .enumerate()
            .map(|(i, &k)| k - (i as u64 + 1))
            .sum();
        *best = Some(best.map_or(w, |b| b.min(w)));
        return;
    }
    let last_start = top + 1 - remaining as u64;
    for k in start..=last_start {
        gaps.push(k);
        search_gap_sets(k + 1, top, remaining - 1, gaps, req, best);
        gaps.pop();
    }
}

/// Is the complement of `gaps` in Z>=0 (everything above 2g-1 included) a
/// monoid containing the two required values?
fn valid_monoid_complement(gaps: &[u64], top: u64, req: (u64, u64)) -> bool {
    let is_gap = |v: u64| v >= 1 && v <= top && gaps.binary_search(&v).is_ok();
    if is_gap(req.0) || is_gap(req.1) {
        return false;
    }
    for s in 1..=top {
        if is_gap(s) {
            continue;
        }
        for t in s..=top {
            if is_gap(t) {
                continue;
            }
            let sum = s + t;
            if sum <= top && is_gap(sum) {
                return false;
            }
        }
    }
    true
}

/// Castelnuovo-Severi consequence for a superelliptic curve `y^n = f(x)` of
/// degree d admitting coprime-degree maps d1, d2 to genus-zero curves:
/// `(n-1)(d-1)/2 <= (d1-1)(d2-1)`.
pub fn cs_check(n: u64, d: u64, d1: u64, d2: u64) -> Result<bool, Error> {
    if num::integer::gcd(d1, d2) != 1 {
        return Err(Error::Domain(format!(
            "map degrees d1 = {d1}, d2 = {d2} must be coprime"
        )));
    }
    if n < 2 || d < 1 || d1 < 1 || d2 < 1 {
        return Err(Error::Domain("degenerate degrees".into()));
    }
    Ok((n - 1) * (d - 1) <= 2 * (d1 - 1) * (d2 - 1))
}
