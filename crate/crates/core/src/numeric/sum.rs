use num_complex::Complex64;

/// Neumaier compensated summation.
#[derive(Debug, Default, Clone, Copy)]
pub struct CompensatedSum {
    s: f64,
    c: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.s + x;
        if self.s.abs() >= x.abs() {
            self.c += (self.s - t) + x;
        } else {
            self.c += (x - t) + self.s;
        }
        self.s = t;
    }

    pub fn value(&self) -> f64 {
        self.s + self.c
    }
}

/// Compensated accumulation of complex terms, componentwise.
#[derive(Debug, Default, Clone, Copy)]
pub struct ComplexSum {
    re: CompensatedSum,
    im: CompensatedSum,
}

impl ComplexSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

/// Sum of `term(k)` for `k` in `1..=n`, split into fixed-size chunks that
/// are reduced in parallel and then combined in order.
///
/// Chunk boundaries do not depend on the thread pool, so the result is
/// bit-identical for any number of workers.
pub fn par_sum<F>(n: u64, term: F) -> Complex64
where
    F: Fn(u64) -> Complex64 + Sync,
{
    use rayon::prelude::*;
    const CHUNK: u64 = 1 << 14;
    if n <= CHUNK {
        let mut acc = ComplexSum::new();
        for k in 1..=n {
            acc.add(term(k));
        }
        return acc.value();
    }
    let chunks = n.div_ceil(CHUNK);
    let partial: Vec<Complex64> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut acc = ComplexSum::new();
            let lo = c * CHUNK + 1;
            let hi = ((c + 1) * CHUNK).min(n);
            for k in lo..=hi {
                acc.add(term(k));
            }
            acc.value()
        })
        .collect();
    let mut acc = ComplexSum::new();
    for z in partial {
        acc.add(z);
    }
    acc.value()
}
