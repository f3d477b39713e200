//! Word algebras: six-letter words with the involution `tau`, the
//! three-letter alphabet {x, y, z}, and Yamamoto words over {x, y0, y1}.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::valuedomain::{rat_to_string, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mark {
    A,
    B,
    C,
    D,
}

impl Mark {
    pub fn sigma(self) -> Mark {
        match self {
            Mark::A => Mark::D,
            Mark::B => Mark::C,
            Mark::C => Mark::B,
            Mark::D => Mark::A,
        }
    }

    pub fn name(self) -> char {
        match self {
            Mark::A => 'A',
            Mark::B => 'B',
            Mark::C => 'C',
            Mark::D => 'D',
        }
    }

    fn from_char(c: char) -> Option<Mark> {
        match c {
            'A' => Some(Mark::A),
            'B' => Some(Mark::B),
            'C' => Some(Mark::C),
            'D' => Some(Mark::D),
            _ => None,
        }
    }
}

/// One of the six letters `e_uv`, u < v.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter6 {
    AB,
    AC,
    AD,
    BC,
    BD,
    CD,
}

impl Letter6 {
    pub const ALL: [Letter6; 6] = [Letter6::AB, Letter6::AC, Letter6::AD, Letter6::BC, Letter6::BD, Letter6::CD];

    pub fn marks(self) -> (Mark, Mark) {
        use Mark::*;
        match self {
            Letter6::AB => (A, B),
            Letter6::AC => (A, C),
            Letter6::AD => (A, D),
            Letter6::BC => (B, C),
            Letter6::BD => (B, D),
            Letter6::CD => (C, D),
        }
    }

    /// `None` unless `u < v`.
    pub fn from_marks(u: Mark, v: Mark) -> Option<Letter6> {
        Letter6::ALL.into_iter().find(|l| l.marks() == (u, v))
    }

    pub fn name(self) -> &'static str {
        match self {
            Letter6::AB => "AB",
            Letter6::AC => "AC",
            Letter6::AD => "AD",
            Letter6::BC => "BC",
            Letter6::BD => "BD",
            Letter6::CD => "CD",
        }
    }

    /// `e_uv -> e_{sigma(v) sigma(u)}`.
    pub fn tau(self) -> Letter6 {
        let (u, v) = self.marks();
        Letter6::from_marks(v.sigma(), u.sigma()).expect("sigma reverses the mark order")
    }
}

impl fmt::Display for Letter6 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn tokens(text: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut pos = 0;
    text.split(|c: char| c == '.' || c.is_whitespace())
        .map(move |t| {
            let start = pos;
            pos += t.len() + 1;
            (start, t)
        })
        .filter(|(_, t)| !t.is_empty())
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word6(pub Vec<Letter6>);

impl Word6 {
    pub fn empty() -> Self {
        Word6(Vec::new())
    }

    pub fn parse(text: &str) -> Result<Word6> {
        let mut letters = Vec::new();
        for (pos, t) in tokens(text) {
            let bad = || Error::Parse { pos, msg: format!("unknown letter {t:?}") };
            let cs: Vec<char> = t.chars().collect();
            if cs.len() != 2 {
                return Err(bad());
            }
            let (u, v) = (Mark::from_char(cs[0]).ok_or_else(bad)?, Mark::from_char(cs[1]).ok_or_else(bad)?);
            letters.push(Letter6::from_marks(u, v).ok_or_else(bad)?);
        }
        Ok(Word6(letters))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter6] {
        &self.0
    }

    /// Not beginning with `e_Av` and not ending with `e_uD`.
    pub fn is_admissible(&self) -> bool {
        match (self.0.first(), self.0.last()) {
            (Some(f), Some(l)) => f.marks().0 != Mark::A && l.marks().1 != Mark::D,
            _ => true,
        }
    }

    pub fn tau(&self) -> Word6 {
        Word6(self.0.iter().rev().map(|l| l.tau()).collect())
    }

    pub fn concat(&self, o: &Word6) -> Word6 {
        Word6(self.0.iter().chain(&o.0).copied().collect())
    }

    /// `1 + #{non-AD letters}`.
    pub fn m(&self) -> usize {
        1 + self.0.iter().filter(|&&l| l != Letter6::AD).count()
    }

    /// Number of AD letters.
    pub fn kappa(&self) -> usize {
        self.0.iter().filter(|&&l| l == Letter6::AD).count()
    }

    /// All admissible words of length `k`, in lexicographic letter order.
    pub fn enumerate_admissible(k: usize) -> Vec<Word6> {
        let mut out = vec![Word6::empty()];
        for _ in 0..k {
            out = out
                .into_iter()
                .flat_map(|w| Letter6::ALL.into_iter().map(move |l| w.concat(&Word6(vec![l]))))
                .collect();
        }
        out.retain(Word6::is_admissible);
        out
    }

    /// Letterwise image in {x, y, z}, or `None` when `e_BC` occurs.
    pub fn collapse(&self) -> Collapsed {
        let mut out = Vec::with_capacity(self.len());
        for l in &self.0 {
            out.push(match l {
                Letter6::AB | Letter6::AC => Letter3::X,
                Letter6::BD | Letter6::CD => Letter3::Y,
                Letter6::AD => Letter3::Z,
                Letter6::BC => return Collapsed::ContainsBC,
            });
        }
        Collapsed::Word(Word3(out))
    }
}

impl fmt::Display for Word6 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.0.iter().map(|l| l.name()).collect();
        f.write_str(&names.join("."))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Collapsed {
    Word(Word3),
    /// The word contains `e_BC`; its value vanishes at B = C = infinity.
    ContainsBC,
}

/// Finite Q-linear combination of six-letter words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinComb(BTreeMap<Word6, Rat>);

impl LinComb {
    pub fn zero() -> Self {
        LinComb(BTreeMap::new())
    }

    pub fn word(w: Word6) -> Self {
        Self::term(w, Rat::one())
    }

    pub fn term(w: Word6, c: Rat) -> Self {
        let mut l = Self::zero();
        l.add_term(w, c);
        l
    }

    pub fn add_term(&mut self, w: Word6, c: Rat) {
        let e = self.0.entry(w.clone()).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&w);
        }
    }

    pub fn add(&self, o: &LinComb) -> LinComb {
        let mut out = self.clone();
        for (w, c) in &o.0 {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    /// Concatenation product, extended bilinearly.
    pub fn mul(&self, o: &LinComb) -> LinComb {
        let mut out = LinComb::zero();
        for (w1, c1) in &self.0 {
            for (w2, c2) in &o.0 {
                out.add_term(w1.concat(w2), c1 * c2);
            }
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word6, &Rat)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coefficient(&self, w: &Word6) -> Rat {
        self.0.get(w).cloned().unwrap_or_else(Rat::zero)
    }
}

impl fmt::Display for LinComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.0.iter().map(|(w, c)| format!("{}*[{}]", rat_to_string(c), w)).collect();
        f.write_str(&parts.join(" + "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter3 {
    X,
    Y,
    Z,
}

impl Letter3 {
    pub fn name(self) -> &'static str {
        match self {
            Letter3::X => "x",
            Letter3::Y => "y",
            Letter3::Z => "z",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word3(pub Vec<Letter3>);

impl Word3 {
    pub fn parse(text: &str) -> Result<Word3> {
        let mut out = Vec::new();
        for (pos, t) in tokens(text) {
            out.push(match t {
                "x" => Letter3::X,
                "y" => Letter3::Y,
                "z" => Letter3::Z,
                _ => return Err(Error::Parse { pos, msg: format!("unknown letter {t:?}") }),
            });
        }
        Ok(Word3(out))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Membership in `Q + y h x`.
    pub fn in_h0(&self) -> bool {
        match (self.0.first(), self.0.last()) {
            (Some(f), Some(l)) => *f == Letter3::Y && *l == Letter3::X,
            _ => true,
        }
    }

    /// All words of length `k` in `h0`, lexicographic.
    pub fn enumerate_h0(k: usize) -> Vec<Word3> {
        let mut out = vec![Word3::default()];
        for _ in 0..k {
            out = out
                .into_iter()
                .flat_map(|w| {
                    [Letter3::X, Letter3::Y, Letter3::Z].into_iter().map(move |l| {
                        let mut v = w.0.clone();
                        v.push(l);
                        Word3(v)
                    })
                })
                .collect();
        }
        out.retain(Word3::in_h0);
        out
    }
}

impl fmt::Display for Word3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.0.iter().map(|l| l.name()).collect();
        f.write_str(&names.join("."))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum YamLetter {
    X,
    Y0,
    Y1,
}

impl YamLetter {
    pub fn name(self) -> &'static str {
        match self {
            YamLetter::X => "x",
            YamLetter::Y0 => "y0",
            YamLetter::Y1 => "y1",
        }
    }

    /// `x <-> y1`, `y0` fixed.
    pub fn tau_prime(self) -> YamLetter {
        match self {
            YamLetter::X => YamLetter::Y1,
            YamLetter::Y0 => YamLetter::Y0,
            YamLetter::Y1 => YamLetter::X,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YamWord(pub Vec<YamLetter>);

impl YamWord {
    pub fn parse(text: &str) -> Result<YamWord> {
        let mut out = Vec::new();
        for (pos, t) in tokens(text) {
            out.push(match t {
                "x" => YamLetter::X,
                "y0" => YamLetter::Y0,
                "y1" => YamLetter::Y1,
                _ => return Err(Error::Parse { pos, msg: format!("unknown letter {t:?}") }),
            });
        }
        Ok(YamWord(out))
    }

    pub fn tau_prime(&self) -> YamWord {
        YamWord(self.0.iter().rev().map(|l| l.tau_prime()).collect())
    }

    pub fn concat(&self, o: &YamWord) -> YamWord {
        YamWord(self.0.iter().chain(&o.0).copied().collect())
    }

    /// Reads the word as `y_{mu_1} x^{k_1 - 1} ... y_{mu_r} x^{k_r - 1}`.
    pub fn to_aug_index(&self) -> Option<AugIndex> {
        let mut out: Vec<(u32, u8)> = Vec::new();
        for l in &self.0 {
            match l {
                YamLetter::Y0 => out.push((1, 0)),
                YamLetter::Y1 => out.push((1, 1)),
                YamLetter::X => out.last_mut()?.0 += 1,
            }
        }
        Some(AugIndex(out))
    }
}

impl fmt::Display for YamWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.0.iter().map(|l| l.name()).collect();
        f.write_str(&names.join("."))
    }
}

/// Augmented index `((k_1, mu_1), ..., (k_r, mu_r))`, `k_i >= 1`, `mu_i in {0, 1}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AugIndex(pub Vec<(u32, u8)>);

impl AugIndex {
    pub fn new(pairs: &[(u32, u8)]) -> AugIndex {
        assert!(pairs.iter().all(|&(k, mu)| k >= 1 && mu <= 1), "invalid augmented index {pairs:?}");
        AugIndex(pairs.to_vec())
    }

    /// Parses `2:1,1:0` (pairs `k:mu` separated by commas).
    pub fn parse(text: &str) -> Result<AugIndex> {
        let mut out = Vec::new();
        let mut pos = 0;
        for part in text.split(',').filter(|p| !p.trim().is_empty()) {
            let bad = || Error::Parse { pos, msg: format!("expected k:mu, got {part:?}") };
            let (k, mu) = part.trim().split_once(':').ok_or_else(bad)?;
            let k: u32 = k.trim().parse().map_err(|_| bad())?;
            let mu: u8 = mu.trim().parse().map_err(|_| bad())?;
            if k == 0 || mu > 1 {
                return Err(bad());
            }
            out.push((k, mu));
            pos += part.len() + 1;
        }
        Ok(AugIndex(out))
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().map(|p| p.0).sum()
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn is_admissible(&self) -> bool {
        self.0.last() != Some(&(1, 1))
    }

    pub fn to_word(&self) -> YamWord {
        let mut out = Vec::new();
        for &(k, mu) in &self.0 {
            out.push(if mu == 0 { YamLetter::Y0 } else { YamLetter::Y1 });
            out.extend(std::iter::repeat_n(YamLetter::X, k as usize - 1));
        }
        YamWord(out)
    }

    /// The index whose word is `tau'(w(self))`.
    pub fn dual(&self) -> Result<AugIndex> {
        if !self.is_admissible() {
            return Err(Error::NotAdmissible(self.to_string()));
        }
        self.to_word().tau_prime().to_aug_index().ok_or_else(|| Error::NotAdmissible(self.to_string()))
    }

    /// All augmented indices of weight exactly `w`.
    pub fn all_of_weight(w: u32) -> Vec<AugIndex> {
        compositions(w)
            .into_iter()
            .flat_map(|ks| {
                let r = ks.len();
                (0..1u32 << r).map(move |mask| {
                    AugIndex(ks.iter().enumerate().map(|(i, &k)| (k, ((mask >> i) & 1) as u8)).collect())
                })
            })
            .collect()
    }
}

impl fmt::Display for AugIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(k, mu)| format!("{k}:{mu}")).collect();
        f.write_str(&parts.join(","))
    }
}

/// Ordered compositions of `n` into positive parts.
pub fn compositions(n: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `theta(x) = AC - BC`, `theta(y0) = BC`, `theta(y1) = BD - BC`, multiplicatively.
pub fn theta(w: &YamWord) -> LinComb {
    let one = || Rat::one();
    let neg = || -Rat::one();
    let w1 = |l: Letter6| Word6(vec![l]);
    let mut acc = LinComb::word(Word6::empty());
    for l in &w.0 {
        let img = match l {
            YamLetter::X => LinComb::term(w1(Letter6::AC), one()).add(&LinComb::term(w1(Letter6::BC), neg())),
            YamLetter::Y0 => LinComb::word(w1(Letter6::BC)),
            YamLetter::Y1 => LinComb::term(w1(Letter6::BD), one()).add(&LinComb::term(w1(Letter6::BC), neg())),
        };
        acc = acc.mul(&img);
    }
    acc
}

/// A parsed word in any of the three alphabets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyWord {
    Six(Word6),
    Three(Word3),
    Yam(YamWord),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Alphabet {
    Six,
    Three,
    Yam,
}

pub fn parse_word(text: &str, alphabet: Alphabet) -> Result<AnyWord> {
    Ok(match alphabet {
        Alphabet::Six => AnyWord::Six(Word6::parse(text)?),
        Alphabet::Three => AnyWord::Three(Word3::parse(text)?),
        Alphabet::Yam => AnyWord::Yam(YamWord::parse(text)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::valuedomain::int;

    fn w(s: &str) -> Word6 {
        Word6::parse(s).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(w("BD.AB").0, vec![Letter6::BD, Letter6::AB]);
        assert_eq!(w("BD AB"), w("BD.AB"));
        assert!(w("").is_empty());
        assert!(matches!(Word6::parse("BA.AB"), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(Word6::parse("AB.XY"), Err(Error::Parse { pos: 3, .. })));
        assert_eq!(w("CD.AC").to_string(), "CD.AC");
    }

    #[test]
    fn admissibility_examples() {
        assert!(w("BD.AB").is_admissible());
        assert!(!w("AB.BD").is_admissible());
        assert!(w("").is_admissible());
    }

    #[test]
    fn tau_examples() {
        assert_eq!(w("BD.AB").tau(), w("CD.AC"));
        assert_eq!(w("AD").tau(), w("AD"));
        assert_eq!(w("BC").tau(), w("BC"));
        let images: Vec<&str> = Letter6::ALL.iter().map(|l| l.tau().name()).collect();
        assert_eq!(images, ["CD", "BD", "AD", "BC", "AC", "AB"]);
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(Word6::enumerate_admissible(0), vec![Word6::empty()]);
        assert_eq!(Word6::enumerate_admissible(1), vec![w("BC")]);
        assert_eq!(Word6::enumerate_admissible(2).len(), 9);
        assert_eq!(Word6::enumerate_admissible(3).len(), 54);
        let ws = Word6::enumerate_admissible(3);
        assert!(ws.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn m_and_kappa() {
        assert_eq!((w("BD.AB").m(), w("BD.AB").kappa()), (3, 0));
        assert_eq!((w("BD.AD.AB").m(), w("BD.AD.AB").kappa()), (3, 1));
        assert_eq!((w("").m(), w("").kappa()), (1, 0));
    }

    #[test]
    fn augmented_indices() {
        let k = AugIndex::new(&[(2, 1)]);
        assert_eq!(k.to_word().to_string(), "y1.x");
        assert_eq!(k.dual().unwrap(), k);
        let k = AugIndex::new(&[(2, 0)]);
        assert_eq!(k.to_word().to_string(), "y0.x");
        assert_eq!(k.dual().unwrap(), AugIndex::new(&[(1, 1), (1, 0)]));
        let k = AugIndex::new(&[(1, 0)]);
        assert_eq!(k.dual().unwrap(), k);
        assert!(matches!(AugIndex::new(&[(1, 1)]).dual(), Err(Error::NotAdmissible(_))));
        assert_eq!(AugIndex::parse("2:1,1:0").unwrap(), AugIndex::new(&[(2, 1), (1, 0)]));
        assert_eq!(AugIndex::all_of_weight(2).len(), 6);
    }

    #[test]
    fn theta_examples() {
        let t = theta(&YamWord::parse("x").unwrap());
        assert_eq!(t.coefficient(&w("AC")), int(1));
        assert_eq!(t.coefficient(&w("BC")), int(-1));
        let t = theta(&YamWord::parse("y1.x").unwrap());
        assert_eq!(t.len(), 4);
        assert_eq!(t.coefficient(&w("BD.AC")), int(1));
        assert_eq!(t.coefficient(&w("BD.BC")), int(-1));
        assert_eq!(t.coefficient(&w("BC.AC")), int(-1));
        assert_eq!(t.coefficient(&w("BC.BC")), int(1));
        assert_eq!(theta(&YamWord::default()), LinComb::word(Word6::empty()));
    }

    #[test]
    fn collapse_examples() {
        assert_eq!(w("BD.AB").collapse(), Collapsed::Word(Word3::parse("y.x").unwrap()));
        assert_eq!(w("BD.AD.AC").collapse(), Collapsed::Word(Word3::parse("y.z.x").unwrap()));
        assert_eq!(w("BC").collapse(), Collapsed::ContainsBC);
    }
}
