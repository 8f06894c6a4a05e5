/// Möbius values μ(0..=m) by a linear sieve; index 0 holds 0.
pub fn moebius_upto(m: usize) -> Vec<i8> {
    let mut mu = vec![0i8; m + 1];
    if m == 0 {
        return mu;
    }
    mu[1] = 1;
    let mut composite = vec![false; m + 1];
    let mut primes: Vec<usize> = Vec::new();
    for i in 2..=m {
        if !composite[i] {
            primes.push(i);
            mu[i] = -1;
        }
        for &p in &primes {
            let ip = i * p;
            if ip > m {
                break;
            }
            composite[ip] = true;
            if i % p == 0 {
                mu[ip] = 0;
                break;
            }
            mu[ip] = -mu[i];
        }
    }
    mu
}

/// All primes p ≤ n in increasing order (Eratosthenes over odd numbers).
pub fn primes_upto(n: usize) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    // odd[i] represents 2i + 1
    let half = (n - 1) / 2;
    let mut odd = vec![true; half + 1];
    odd[0] = false;
    let mut i = 1;
    while (2 * i + 1) * (2 * i + 1) <= n {
        if odd[i] {
            let p = 2 * i + 1;
            let mut j = (p * p - 1) / 2;
            while j <= half {
                odd[j] = false;
                j += p;
            }
        }
        i += 1;
    }
    let mut primes = vec![2u64];
    primes.extend(
        odd.iter()
            .enumerate()
            .filter(|(_, &is_prime)| is_prime)
            .map(|(i, _)| (2 * i + 1) as u64)
            .filter(|&p| p as usize <= n),
    );
    primes
}
