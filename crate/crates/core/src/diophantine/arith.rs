pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Euler's totient by trial-division factorisation. `totient(0)` is 0.
pub fn totient(q: u64) -> u64 {
    let mut n = q;
    let mut phi = q;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    phi
}

/// `φ(0..=q_max)` by a linear sieve; entry 0 is 0.
pub fn totient_sieve(q_max: usize) -> Vec<u64> {
    let mut phi = vec![0u64; q_max + 1];
    if q_max >= 1 {
        phi[1] = 1;
    }
    let mut primes: Vec<usize> = Vec::new();
    for i in 2..=q_max {
        if phi[i] == 0 {
            phi[i] = (i - 1) as u64;
            primes.push(i);
        }
        for &p in &primes {
            let m = i * p;
            if m > q_max {
                break;
            }
            if i % p == 0 {
                phi[m] = phi[i] * p as u64;
                break;
            }
            phi[m] = phi[i] * (p - 1) as u64;
        }
    }
    phi
}
