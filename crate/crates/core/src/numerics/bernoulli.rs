use std::sync::{Mutex, OnceLock};

use rug::{Complete, Integer, Rational};

fn cache() -> &'static Mutex<Vec<Rational>> {
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![Rational::from(1), Rational::from((-1, 2))]))
}

/// Binomial coefficient C(n, k) as an exact integer.
pub fn binomial(n: u32, k: u32) -> Integer {
    if k > n {
        return Integer::new();
    }
    Integer::binomial_u(n, k).complete()
}

/// B_n with the convention B_1 = -1/2. Memoized; extends on demand.
pub fn bernoulli(n: u32) -> Rational {
    if n > 1 && n % 2 == 1 {
        return Rational::new();
    }
    let mut table = cache().lock().expect("bernoulli cache poisoned");
    while table.len() <= n as usize {
        let m = table.len() as u32;
        if m % 2 == 1 {
            table.push(Rational::new());
            continue;
        }
        // sum_{k<m} C(m+1, k) B_k + (m+1) B_m = 0
        let mut acc = Rational::new();
        for (k, b) in table.iter().enumerate() {
            if b.cmp0().is_eq() {
                continue;
            }
            acc += Rational::from(binomial(m + 1, k as u32)) * b;
        }
        acc /= -(m as i64 + 1);
        table.push(acc);
    }
    table[n as usize].clone()
}
