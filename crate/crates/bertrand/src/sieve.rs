//! Segmented sieve of Eratosthenes, odd numbers only, one bit per candidate.
//!
//! Layout: a segment covers `[lo, hi)` and stores one bit per odd integer in
//! the range (2 is the callers' special case). A set bit means prime. Each
//! byte of flag storage therefore spans 16 integers, so the default
//! 256 KiB segment covers ~4.2 million numbers and stays cache-resident
//! while base primes stride through it.
//!
//! Base primes (up to the square root of the highest segment sieved) come
//! from a plain unsegmented odd sieve that regrows by doubling when a
//! caller pushes past its limit.
//!
//! [`PrimeScanner`] chains segments into an unbounded forward iterator with
//! an adaptive span: it starts with a few-KiB segment so that point queries
//! like [`next_prime_after`] touch little memory, and doubles up to the
//! configured span for long enumerations.

/// Default flag-storage size per segment, in bytes (L2-sized).
pub const DEFAULT_SEGMENT_BYTES: usize = 262_144;

/// Sieving configuration: how much flag storage one segment uses.
#[derive(Debug, Clone, Copy)]
pub struct SieveConfig {
    pub segment_bytes: usize,
}

impl Default for SieveConfig {
    fn default() -> Self {
        SieveConfig { segment_bytes: DEFAULT_SEGMENT_BYTES }
    }
}

impl SieveConfig {
    /// Integers covered by one segment (16 per byte of flags).
    pub fn span(&self) -> u64 {
        (self.segment_bytes.max(16) as u64) * 16
    }
}

/// Cache of small odd primes used to mark segments, regrown on demand.
#[derive(Debug, Default)]
pub struct BasePrimes {
    limit: u64,
    odd_primes: Vec<u64>,
}

impl BasePrimes {
    pub fn new() -> Self {
        Self::default()
    }

    /// Odd primes `<= limit`, re-sieving (with doubling) if `limit` grew.
    pub fn ensure(&mut self, limit: u64) -> &[u64] {
        if limit > self.limit {
            let target = limit.max(self.limit * 2).max(1 << 10);
            self.odd_primes = simple_odd_sieve(target);
            self.limit = target;
        }
        &self.odd_primes
    }
}

/// Unsegmented odd sieve: all odd primes `<= limit`.
fn simple_odd_sieve(limit: u64) -> Vec<u64> {
    if limit < 3 {
        return Vec::new();
    }
    // index i <-> number 2i + 3
    let n = ((limit - 3) / 2 + 1) as usize;
    let mut composite = vec![false; n];
    let mut p = 3u64;
    while p * p <= limit {
        if !composite[((p - 3) / 2) as usize] {
            let mut m = p * p;
            while m <= limit {
                composite[((m - 3) / 2) as usize] = true;
                m += 2 * p;
            }
        }
        p += 2;
    }
    composite
        .iter()
        .enumerate()
        .filter(|(_, &c)| !c)
        .map(|(i, _)| 2 * i as u64 + 3)
        .collect()
}

/// One sieved window `[lo, hi)`: bit `i` set iff `first_odd + 2i` is prime.
#[derive(Debug)]
pub struct SieveSegment {
    lo: u64,
    hi: u64,
    first_odd: u64,
    words: Vec<u64>,
}

impl SieveSegment {
    /// Sieve `[lo, hi)`, growing `base` to cover `isqrt(hi - 1)` as needed.
    pub fn sieve(lo: u64, hi: u64, base: &mut BasePrimes) -> Self {
        let root = if hi > 1 { (hi - 1).isqrt() } else { 0 };
        Self::sieve_with_primes(lo, hi, base.ensure(root))
    }

    /// Sieve `[lo, hi)` against a precomputed slice of odd base primes
    /// (ascending, covering at least `isqrt(hi - 1)`). Takes the primes by
    /// shared reference so parallel callers can reuse one slice.
    pub(crate) fn sieve_with_primes(lo: u64, hi: u64, odd_base: &[u64]) -> Self {
        assert!(lo < hi, "empty segment");
        let first_odd = lo | 1;
        let n_odds = if hi > first_odd { (hi - first_odd).div_ceil(2) as usize } else { 0 };
        let mut words = vec![u64::MAX; n_odds.div_ceil(64)];
        // trailing bits past n_odds stay set; iteration stops at n_odds
        for &p in odd_base {
            if p * p >= hi {
                break;
            }
            // first odd multiple of p inside [lo, hi), never p itself
            let mut m = (lo.div_ceil(p) * p).max(p * p);
            if m % 2 == 0 {
                m += p;
            }
            if m >= hi {
                continue;
            }
            let mut j = ((m - first_odd) / 2) as usize;
            while j < n_odds {
                words[j >> 6] &= !(1u64 << (j & 63));
                j += p as usize;
            }
        }
        if first_odd == 1 && n_odds > 0 {
            words[0] &= !1u64; // 1 is not prime
        }
        SieveSegment { lo, hi, first_odd, words }
    }

    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }

    fn n_odds(&self) -> usize {
        if self.hi > self.first_odd { (self.hi - self.first_odd).div_ceil(2) as usize } else { 0 }
    }

    /// Odd primes in `[lo, hi)`, ascending. 2 is never yielded.
    pub fn odd_primes(&self) -> impl Iterator<Item = u64> + '_ {
        let n = self.n_odds();
        self.words.iter().enumerate().flat_map(move |(wi, &word)| {
            let mut w = word;
            if (wi + 1) * 64 > n {
                let valid = n - wi * 64;
                w &= if valid == 64 { u64::MAX } else { (1u64 << valid) - 1 };
            }
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let tz = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(self.first_odd + 2 * (wi * 64 + tz) as u64)
            })
        })
    }

    /// Append the segment's odd primes to `out`.
    pub fn collect_into(&self, out: &mut Vec<u64>) {
        out.extend(self.odd_primes());
    }
}

/// Unbounded ascending prime iterator backed by forward segment scans.
///
/// The span starts small and doubles until it reaches the configured
/// segment size, so both point lookups and bulk enumeration are cheap.
#[derive(Debug)]
pub struct PrimeScanner {
    base: BasePrimes,
    next_lo: u64,
    span: u64,
    max_span: u64,
    buf: Vec<u64>,
    pos: usize,
}

const SCANNER_INITIAL_SPAN: u64 = 1 << 12;

impl PrimeScanner {
    pub fn new() -> Self {
        Self::starting_at(0)
    }

    pub fn with_config(cfg: &SieveConfig) -> Self {
        let mut s = Self::starting_at(0);
        s.max_span = cfg.span();
        s
    }

    /// Scanner whose first prime is the least prime `>= start`.
    pub fn starting_at(start: u64) -> Self {
        let mut buf = Vec::new();
        if start <= 2 {
            buf.push(2);
        }
        PrimeScanner {
            base: BasePrimes::new(),
            next_lo: start.max(3),
            span: SCANNER_INITIAL_SPAN,
            max_span: SieveConfig::default().span(),
            buf,
            pos: 0,
        }
    }

    fn fill(&mut self) {
        self.buf.clear();
        self.pos = 0;
        while self.buf.is_empty() {
            let lo = self.next_lo;
            let hi = lo
                .checked_add(self.span)
                .expect("prime scan past the end of u64");
            SieveSegment::sieve(lo, hi, &mut self.base).collect_into(&mut self.buf);
            self.next_lo = hi;
            self.span = (self.span * 2).min(self.max_span.max(SCANNER_INITIAL_SPAN));
        }
    }

    /// The next prime without consuming it.
    pub fn peek(&mut self) -> u64 {
        if self.pos == self.buf.len() {
            self.fill();
        }
        self.buf[self.pos]
    }

    /// Consume and return the next prime.
    pub fn pop(&mut self) -> u64 {
        let p = self.peek();
        self.pos += 1;
        p
    }
}

impl Default for PrimeScanner {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for PrimeScanner {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        Some(self.pop())
    }
}

/// Ascending stream of all primes `<= limit`.
#[derive(Debug)]
pub struct PrimeStream {
    scanner: PrimeScanner,
    limit: u64,
}

impl Iterator for PrimeStream {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let p = self.scanner.peek();
        if p > self.limit {
            return None;
        }
        self.scanner.pos += 1;
        Some(p)
    }
}

/// All primes up to and including `limit`, ascending.
pub fn primes_up_to(limit: u64) -> PrimeStream {
    primes_up_to_with(limit, &SieveConfig::default())
}

pub fn primes_up_to_with(limit: u64, cfg: &SieveConfig) -> PrimeStream {
    PrimeStream { scanner: PrimeScanner::with_config(cfg), limit }
}

/// Primality by trial division. Deliberately shares no machinery with the
/// segmented sieve so the two can cross-validate each other.
pub fn is_prime(k: u64) -> bool {
    if k < 2 {
        return false;
    }
    if k.is_multiple_of(2) {
        return k == 2;
    }
    let mut d = 3u64;
    while d * d <= k {
        if k.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// The least prime strictly greater than `k`.
pub fn next_prime_after(k: u64) -> u64 {
    assert!(k < 1 << 62, "argument too close to u64::MAX");
    PrimeScanner::starting_at(k + 1).pop()
}

/// Fixed segmentation of `[lo, hi)` used by bulk evaluation; boundaries
/// depend only on the configured span, never on thread count.
pub(crate) fn segment_bounds(lo: u64, hi: u64, cfg: &SieveConfig) -> Vec<(u64, u64)> {
    let span = cfg.span();
    let mut out = Vec::new();
    let mut at = lo;
    while at < hi {
        let end = at.saturating_add(span).min(hi);
        out.push((at, end));
        at = end;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division_primes(limit: u64) -> Vec<u64> {
        (2..=limit).filter(|&k| is_prime(k)).collect()
    }

    #[test]
    fn small_streams() {
        assert_eq!(primes_up_to(1).collect::<Vec<_>>(), Vec::<u64>::new());
        assert_eq!(primes_up_to(2).collect::<Vec<_>>(), vec![2]);
        assert_eq!(primes_up_to(3).collect::<Vec<_>>(), vec![2, 3]);
        assert_eq!(primes_up_to(10).collect::<Vec<_>>(), vec![2, 3, 5, 7]);
        assert_eq!(primes_up_to(11).collect::<Vec<_>>(), vec![2, 3, 5, 7, 11]);
    }

    #[test]
    fn stream_matches_trial_division_exhaustively() {
        let want = trial_division_primes(20_000);
        let got: Vec<u64> = primes_up_to(20_000).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn tiny_segments_change_nothing() {
        let cfg = SieveConfig { segment_bytes: 16 };
        let got: Vec<u64> = primes_up_to_with(5_000, &cfg).collect();
        assert_eq!(got, trial_division_primes(5_000));
    }

    #[test]
    fn segments_at_arbitrary_offsets() {
        let mut base = BasePrimes::new();
        for (lo, hi) in [(0u64, 97u64), (89, 127), (100, 101), (121, 123), (9_973, 9_975)] {
            let seg = SieveSegment::sieve(lo, hi, &mut base);
            let want: Vec<u64> =
                (lo..hi).filter(|&k| k % 2 == 1 && is_prime(k)).collect();
            assert_eq!(seg.odd_primes().collect::<Vec<_>>(), want, "window [{lo}, {hi})");
        }
    }

    #[test]
    fn prime_counts_at_known_checkpoints() {
        assert_eq!(primes_up_to(1_000).count(), 168);
        assert_eq!(primes_up_to(100_000).count(), 9_592);
    }

    #[test]
    fn next_prime_after_examples() {
        assert_eq!(next_prime_after(1), 2);
        assert_eq!(next_prime_after(2), 3);
        assert_eq!(next_prime_after(89), 97);
        assert_eq!(next_prime_after(505), 509);
        assert_eq!(next_prime_after(9_973), 10_007);
    }

    #[test]
    fn next_prime_crosses_segment_boundaries() {
        // force the scanner through several adaptive spans
        let p = next_prime_after(10_000_000);
        assert_eq!(p, 10_000_019);
        assert!(is_prime(p));
        for k in 10_000_000..p {
            assert!(!is_prime(k));
        }
    }

    #[test]
    fn trial_division_spot_checks() {
        assert!(!is_prime(0) && !is_prime(1));
        assert!(is_prime(2) && is_prime(3) && is_prime(631));
        assert!(!is_prime(25) && !is_prime(121) && !is_prime(1_000_000));
        assert!(is_prime(2_147_483_647)); // 2^31 - 1
    }

    #[test]
    fn scanner_resumes_mid_range() {
        let mut s = PrimeScanner::starting_at(90);
        assert_eq!(s.peek(), 97);
        assert_eq!(s.pop(), 97);
        assert_eq!(s.pop(), 101);
    }

    #[test]
    fn segment_bounds_tile_exactly() {
        let cfg = SieveConfig { segment_bytes: 16 };
        let bounds = segment_bounds(0, 1000, &cfg);
        assert_eq!(bounds.first().unwrap().0, 0);
        assert_eq!(bounds.last().unwrap().1, 1000);
        for w in bounds.windows(2) {
            assert_eq!(w[0].1, w[1].0);
        }
    }
}
