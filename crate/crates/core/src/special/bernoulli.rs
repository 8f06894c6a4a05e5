use rug::{Float, Integer, Rational};

/// Even-index Bernoulli numbers B_2, B_4, ... as exact rationals.
#[derive(Clone, Debug)]
pub struct BernoulliCache {
    /// values[j - 1] = B_{2j}
    values: Vec<Rational>,
}

impl BernoulliCache {
    /// Computes B_2 .. B_{2j_max} from the recurrence
    /// Σ_{i=0}^{m} C(m+1, i) B_i = 0.
    pub fn new(j_max: usize) -> Self {
        let m_max = 2 * j_max;
        let mut all: Vec<Rational> = Vec::with_capacity(m_max + 1);
        all.push(Rational::from(1));
        for m in 1..=m_max {
            if m > 1 && m % 2 == 1 {
                all.push(Rational::new());
                continue;
            }
            let mut acc = Rational::new();
            let mut binom = Integer::from(1); // C(m+1, 0)
            for (i, b) in all.iter().enumerate() {
                if *b != 0 {
                    acc += Rational::from(&binom * b.numer()) / b.denom();
                }
                binom *= (m + 1 - i) as u32;
                binom /= (i + 1) as u32;
            }
            all.push(-acc / Rational::from(m as u32 + 1));
        }
        let values = (1..=j_max).map(|j| all[2 * j].clone()).collect();
        BernoulliCache { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// B_{2j} for j ≥ 1.
    pub fn b2j(&self, j: usize) -> &Rational {
        &self.values[j - 1]
    }

    /// B_{2j}/(2j)! rounded to `prec` bits.
    pub fn scaled_float(&self, j: usize, prec: u32) -> Float {
        let fact = Integer::from(Integer::factorial(2 * j as u32));
        let q = Rational::from(self.b2j(j) / fact);
        Float::with_val(prec, &q)
    }
}
