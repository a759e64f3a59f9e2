//! Minimum discriminating truncation per sum kind over small semiprimes.

use wavefactor_core::{min_discriminating_terms, Error, SumKind};

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn main() {
    let primes: Vec<u64> = (101..300).filter(|&p| is_prime(p)).collect();
    let mut pairs = Vec::new();
    for (i, &p) in primes.iter().enumerate() {
        for &q in &primes[i + 1..] {
            pairs.push((p, q));
        }
    }
    for (p, q) in pairs.into_iter().take(30) {
        let n = p * q;
        let row: Vec<String> = [SumKind::Fourier, SumKind::Gauss, SumKind::Kummer]
            .into_iter()
            .map(|kind| match min_discriminating_terms(n, kind, 0.75) {
                Ok(m) => m.to_string(),
                Err(Error::NotSeparated { trial, .. }) => format!("ghost@{trial}"),
                Err(e) => e.to_string(),
            })
            .collect();
        println!("{p} x {q} = {n} (mod 9 = {}): {}", n % 9, row.join(" "));
    }
}
