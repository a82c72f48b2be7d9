//! Normal forms for the atoms the probe can walk.

use std::hash::Hash;

use super::ProbeError;

/// A group with solvable word problem, presented by canonical normal forms.
///
/// Letters are `±(i + 1)` for generator `i`.
pub trait NormalForm {
    type Element: Clone + Eq + Hash;

    /// Rank of the height lattice `Z^m`.
    fn rank(&self) -> usize;
    fn generator_names(&self) -> Vec<String>;
    fn identity(&self) -> Self::Element;
    fn step(&self, g: &Self::Element, letter: i32) -> Result<Self::Element, ProbeError>;
    /// Image in the free part of the abelianization.
    fn height(&self, g: &Self::Element) -> Vec<i64>;
    fn label(&self, g: &Self::Element) -> String;

    fn generator_height(&self, i: usize) -> Vec<i64> {
        let g = self.step(&self.identity(), i as i32 + 1).expect("a single letter never overflows");
        self.height(&g)
    }
}

fn letter_index(letter: i32) -> (usize, i64) {
    (letter.unsigned_abs() as usize - 1, i64::from(letter.signum()))
}

/// `Z^k` as exponent vectors.
pub struct FreeAbelianModel(pub usize);

impl NormalForm for FreeAbelianModel {
    type Element = Vec<i64>;

    fn rank(&self) -> usize {
        self.0
    }

    fn generator_names(&self) -> Vec<String> {
        (1..=self.0).map(|i| format!("e{i}")).collect()
    }

    fn identity(&self) -> Vec<i64> {
        vec![0; self.0]
    }

    fn step(&self, g: &Vec<i64>, letter: i32) -> Result<Vec<i64>, ProbeError> {
        let (i, sign) = letter_index(letter);
        let mut out = g.clone();
        out[i] += sign;
        Ok(out)
    }

    fn height(&self, g: &Vec<i64>) -> Vec<i64> {
        g.clone()
    }

    fn label(&self, g: &Vec<i64>) -> String {
        let parts: Vec<String> = g.iter().map(ToString::to_string).collect();
        format!("({})", parts.join(","))
    }
}

/// `F(n)` as freely reduced words.
pub struct FreeModel(pub usize);

impl NormalForm for FreeModel {
    type Element = Vec<i32>;

    fn rank(&self) -> usize {
        self.0
    }

    fn generator_names(&self) -> Vec<String> {
        (1..=self.0).map(|i| format!("x{i}")).collect()
    }

    fn identity(&self) -> Vec<i32> {
        Vec::new()
    }

    fn step(&self, g: &Vec<i32>, letter: i32) -> Result<Vec<i32>, ProbeError> {
        let mut out = g.clone();
        if out.last() == Some(&-letter) {
            out.pop();
        } else {
            out.push(letter);
        }
        Ok(out)
    }

    fn height(&self, g: &Vec<i32>) -> Vec<i64> {
        let mut h = vec![0; self.0];
        for &l in g {
            let (i, sign) = letter_index(l);
            h[i] += sign;
        }
        h
    }

    fn label(&self, g: &Vec<i32>) -> String {
        if g.is_empty() {
            return "1".into();
        }
        let letters: Vec<String> = g
            .iter()
            .map(|&l| if l > 0 { format!("x{l}") } else { format!("x{}^-1", -l) })
            .collect();
        letters.join(" ")
    }
}

/// `<a, b | a b a b^-1>` as `a^p b^q`; the height is the exponent sum of `b`.
pub struct KleinModel;

impl NormalForm for KleinModel {
    type Element = (i64, i64);

    fn rank(&self) -> usize {
        1
    }

    fn generator_names(&self) -> Vec<String> {
        vec!["a".into(), "b".into()]
    }

    fn identity(&self) -> (i64, i64) {
        (0, 0)
    }

    fn step(&self, &(p, q): &(i64, i64), letter: i32) -> Result<(i64, i64), ProbeError> {
        let flip = if q.rem_euclid(2) == 0 { 1 } else { -1 };
        Ok(match letter {
            1 => (p + flip, q),
            -1 => (p - flip, q),
            2 => (p, q + 1),
            -2 => (p, q - 1),
            _ => unreachable!("Klein bottle has two generators"),
        })
    }

    fn height(&self, g: &(i64, i64)) -> Vec<i64> {
        vec![g.1]
    }

    fn label(&self, &(p, q): &(i64, i64)) -> String {
        format!("a^{p} b^{q}")
    }
}

/// `BS(1, n) = <a, t | t a t^-1 = a^n>` as `t^-p a^q t^s` with `p, s >= 0`
/// and `n ∤ q` whenever `p, s > 0`.
///
/// The height is `p - s`, minus the exponent sum of `t`, matching the
/// catalog's sign for the `Σ¹` complement `{-e1}`.
pub struct BaumslagSolitarModel(pub i128);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BsElement {
    pub p: u32,
    pub q: i128,
    pub s: u32,
}

impl BaumslagSolitarModel {
    fn pow(&self, e: u32) -> Result<i128, ProbeError> {
        self.0.checked_pow(e).ok_or(ProbeError::Overflow)
    }

    /// Canonical form of `a^(num / n^den) t^j`.
    fn canonical(&self, mut num: i128, mut den: u32, j: i64) -> Result<BsElement, ProbeError> {
        while den > 0 && num % self.0 == 0 {
            num /= self.0;
            den -= 1;
        }
        let mut s = j + i64::from(den);
        if s < 0 {
            let lift = u32::try_from(-s).map_err(|_| ProbeError::Overflow)?;
            num = num.checked_mul(self.pow(lift)?).ok_or(ProbeError::Overflow)?;
            den += lift;
            s = 0;
        }
        let s = u32::try_from(s).map_err(|_| ProbeError::Overflow)?;
        Ok(BsElement { p: den, q: num, s })
    }
}

impl NormalForm for BaumslagSolitarModel {
    type Element = BsElement;

    fn rank(&self) -> usize {
        1
    }

    fn generator_names(&self) -> Vec<String> {
        vec!["a".into(), "t".into()]
    }

    fn identity(&self) -> BsElement {
        BsElement { p: 0, q: 0, s: 0 }
    }

    fn step(&self, g: &BsElement, letter: i32) -> Result<BsElement, ProbeError> {
        let j = i64::from(g.s) - i64::from(g.p);
        match letter {
            2 | -2 => self.canonical(g.q, g.p, j + i64::from(letter.signum())),
            1 | -1 => {
                // a^x t^j a^±1 = a^(x ± n^j) t^j
                let sign = i128::from(letter.signum());
                let den = if j >= 0 { g.p } else { g.p.max(u32::try_from(-j).map_err(|_| ProbeError::Overflow)?) };
                let shifted = self.pow(den - g.p)?.checked_mul(g.q).ok_or(ProbeError::Overflow)?;
                let exp = i64::from(den) + j;
                let delta = self.pow(u32::try_from(exp).map_err(|_| ProbeError::Overflow)?)?;
                let num = shifted.checked_add(sign * delta).ok_or(ProbeError::Overflow)?;
                self.canonical(num, den, j)
            }
            _ => unreachable!("BS(1,n) has two generators"),
        }
    }

    fn height(&self, g: &BsElement) -> Vec<i64> {
        vec![i64::from(g.p) - i64::from(g.s)]
    }

    fn label(&self, g: &BsElement) -> String {
        format!("t^-{} a^{} t^{}", g.p, g.q, g.s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word<M: NormalForm>(m: &M, letters: &[i32]) -> M::Element {
        letters.iter().fold(m.identity(), |g, &l| m.step(&g, l).unwrap())
    }

    #[test]
    fn bs_relation_holds() {
        let m = BaumslagSolitarModel(2);
        // t a t^-1 = a^2
        assert_eq!(word(&m, &[2, 1, -2]), word(&m, &[1, 1]));
        assert_eq!(word(&m, &[-2, 1, 1, 2]), word(&m, &[1]));
        let g = word(&m, &[-2, 1, 2, 2]);
        assert_eq!(g, BsElement { p: 1, q: 1, s: 2 });
        assert_eq!(word(&m, &[2, 1, 1, 1, -1, -1, -1, -2]), m.identity());
    }

    #[test]
    fn bs_normal_form_condition() {
        let m = BaumslagSolitarModel(3);
        let g = word(&m, &[-2, 1, 1, 1, 2, 2]);
        assert_eq!(g, BsElement { p: 0, q: 1, s: 1 });
        let g = word(&m, &[-2, -2, 1]);
        assert_eq!(g, BsElement { p: 2, q: 1, s: 0 });
        assert_eq!(m.height(&g), vec![2]);
    }

    #[test]
    fn klein_relation_holds() {
        let m = KleinModel;
        assert_eq!(word(&m, &[1, 2, 1, -2]), m.identity());
        assert_eq!(word(&m, &[2, 1, -2]), word(&m, &[-1]));
    }

    #[test]
    fn free_words_reduce() {
        let m = FreeModel(2);
        assert_eq!(word(&m, &[1, 2, -2, -1]), m.identity());
        assert_eq!(m.height(&word(&m, &[1, 2, 1, -2])), vec![2, 0]);
    }
}
