//! Modular multiplication backends for 128-bit moduli.
//!
//! Moduli below 2^64 multiply directly in `u128`; larger odd moduli use
//! Montgomery reduction with `R = 2^128` so no 256-bit division is needed.

pub(crate) trait ModRing: Copy {
    fn modulus(&self) -> u128;
    /// Maps an integer below the modulus into the ring representation.
    fn enter(&self, x: u128) -> u128;
    #[cfg_attr(not(test), allow(dead_code))]
    fn leave(&self, x: u128) -> u128;
    fn one(&self) -> u128;
    fn mul(&self, a: u128, b: u128) -> u128;

    fn add(&self, a: u128, b: u128) -> u128 {
        let n = self.modulus();
        let (s, carry) = a.overflowing_add(b);
        if carry || s >= n {
            s.wrapping_sub(n)
        } else {
            s
        }
    }

    fn sub(&self, a: u128, b: u128) -> u128 {
        if a >= b {
            a - b
        } else {
            a.wrapping_sub(b).wrapping_add(self.modulus())
        }
    }

    fn pow(&self, base: u128, mut exp: u128) -> u128 {
        let mut acc = self.one();
        let mut b = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            exp >>= 1;
        }
        acc
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Direct {
    n: u128,
}

impl Direct {
    pub(crate) fn new(n: u64) -> Self {
        debug_assert!(n > 1);
        Self { n: n as u128 }
    }
}

impl ModRing for Direct {
    fn modulus(&self) -> u128 {
        self.n
    }
    fn enter(&self, x: u128) -> u128 {
        x % self.n
    }
    fn leave(&self, x: u128) -> u128 {
        x
    }
    fn one(&self) -> u128 {
        1
    }
    fn mul(&self, a: u128, b: u128) -> u128 {
        (a * b) % self.n
    }
}

/// Full 256-bit product as `(hi, lo)`.
pub(crate) fn mul_wide(a: u128, b: u128) -> (u128, u128) {
    const LO: u128 = u64::MAX as u128;
    let (a1, a0) = (a >> 64, a & LO);
    let (b1, b0) = (b >> 64, b & LO);
    let p00 = a0 * b0;
    let p01 = a0 * b1;
    let p10 = a1 * b0;
    let p11 = a1 * b1;
    let mid = (p00 >> 64) + (p01 & LO) + (p10 & LO);
    let lo = (p00 & LO) | (mid << 64);
    let hi = p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64);
    (hi, lo)
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Montgomery {
    n: u128,
    /// -n^{-1} mod 2^128
    neg_inv: u128,
    /// 2^256 mod n
    r2: u128,
    /// 2^128 mod n
    r1: u128,
}

impl Montgomery {
    pub(crate) fn new(n: u128) -> Self {
        assert!(n & 1 == 1 && n > 1, "Montgomery modulus must be odd");
        let mut inv = n;
        for _ in 0..7 {
            inv = inv.wrapping_mul(2u128.wrapping_sub(n.wrapping_mul(inv)));
        }
        debug_assert_eq!(n.wrapping_mul(inv), 1);
        let r1 = (u128::MAX % n + 1) % n;
        let mut ctx = Self {
            n,
            neg_inv: inv.wrapping_neg(),
            r2: 0,
            r1,
        };
        let mut r2 = r1;
        for _ in 0..128 {
            r2 = ctx.add(r2, r2);
        }
        ctx.r2 = r2;
        ctx
    }

    fn redc(&self, hi: u128, lo: u128) -> u128 {
        let m = lo.wrapping_mul(self.neg_inv);
        let (mn_hi, mn_lo) = mul_wide(m, self.n);
        let (_, carry_lo) = lo.overflowing_add(mn_lo);
        let (t, c1) = hi.overflowing_add(mn_hi);
        let (t, c2) = t.overflowing_add(carry_lo as u128);
        if c1 || c2 || t >= self.n {
            t.wrapping_sub(self.n)
        } else {
            t
        }
    }
}

impl ModRing for Montgomery {
    fn modulus(&self) -> u128 {
        self.n
    }
    fn enter(&self, x: u128) -> u128 {
        let (hi, lo) = mul_wide(x % self.n, self.r2);
        self.redc(hi, lo)
    }
    fn leave(&self, x: u128) -> u128 {
        self.redc(0, x)
    }
    fn one(&self) -> u128 {
        self.r1
    }
    fn mul(&self, a: u128, b: u128) -> u128 {
        let (hi, lo) = mul_wide(a, b);
        self.redc(hi, lo)
    }
}
