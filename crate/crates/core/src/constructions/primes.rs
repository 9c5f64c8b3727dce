use crate::{Error, Result};

pub fn is_prime(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut f = 3;
    while f <= n / f {
        if n % f == 0 {
            return false;
        }
        f += 2;
    }
    true
}

/// Largest prime `p <= n`. By Bertrand's postulate `p > n/2`.
pub fn largest_prime_leq(n: i64) -> Result<i64> {
    if n < 2 {
        return Err(Error::InvalidParameter(alloc::format!("no prime <= {n}")));
    }
    Ok((2..=n).rev().find(|&p| is_prime(p)).expect("2 is prime"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(largest_prime_leq(100).unwrap(), 97);
        assert_eq!(largest_prime_leq(13).unwrap(), 13);
        assert_eq!(largest_prime_leq(2).unwrap(), 2);
        assert!(largest_prime_leq(1).is_err());
    }

    #[test]
    fn bertrand_and_sieve_agree() {
        let limit = 2000usize;
        let mut sieve = alloc::vec![true; limit + 1];
        sieve[0] = false;
        sieve[1] = false;
        for i in 2..=limit {
            if sieve[i] {
                for j in (i * i..=limit).step_by(i) {
                    sieve[j] = false;
                }
            }
        }
        for n in 2..=limit {
            let p = largest_prime_leq(n as i64).unwrap();
            assert!(sieve[p as usize]);
            assert!((p as usize + 1..=n).all(|q| !sieve[q]));
            assert!(2 * p > n as i64);
        }
    }
}
