//! Pro-p presentations, normal forms modulo the third term of the lower
//! p-central filtration, and the cup product read off from relators.
//!
//! Modulo `S^(3)` every element of the free pro-p group `S` on `x_1..x_n` is
//! uniquely `∏ x_i^{c_i} · ∏_{i<j} [x_i, x_j]^{d_ij}` with `c_i` mod `p²` and
//! `d_ij` mod `p`, where `[a, b] = a⁻¹b⁻¹ab`. Commutators are central and
//! bilinear modulo `S^(3)`, and `x_j^t x_k^s = x_k^s x_j^t [x_j, x_k]^{ts}`, so
//! moving a letter `x_k^s` left past `x_j^t` (`j > k`) subtracts `s·t` from
//! `d_kj`. This is the collection step used by [`collect_mod_s3`].

use std::fmt;

use thiserror::Error;

use crate::bilform::{AugBilinearMap, BilformError};
use crate::fpla::{self, FpMat, FpVec, FplaError, PrimeField};
use crate::graphs::SimplicialGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("position {pos}: unknown generator `{name}`")]
    UnknownGenerator { pos: usize, name: String },
    #[error("position {pos}: malformed exponent `{text}`")]
    MalformedExponent { pos: usize, text: String },
    #[error("position {pos}: empty relator")]
    EmptyRelator { pos: usize },
    #[error("relator not in Frattini subgroup: exponent sum of generator {generator} is not divisible by p")]
    NotFrattini { generator: usize },
    #[error("cannot certify minimal presentation: relator coordinates are linearly dependent mod S^(3)")]
    DependentRelators,
    #[error("no augmentation exists for this map")]
    NoAugmentation,
    #[error(transparent)]
    Linear(#[from] FplaError),
    #[error(transparent)]
    Bilform(#[from] BilformError),
}

/// A word in the generators: `(index, exponent)` letters with nonzero
/// exponents and no two adjacent letters on the same generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<(usize, i64)>);

impl Word {
    pub fn new(letters: impl IntoIterator<Item = (usize, i64)>) -> Word {
        let mut w = Word::default();
        for (g, e) in letters {
            w.push(g, e);
        }
        w
    }

    pub fn generator(g: usize) -> Word {
        Word(vec![(g, 1)])
    }

    fn push(&mut self, g: usize, e: i64) {
        if e == 0 {
            return;
        }
        match self.0.last_mut() {
            Some((lg, le)) if *lg == g => {
                *le += e;
                if *le == 0 {
                    self.0.pop();
                }
            }
            _ => self.0.push((g, e)),
        }
    }

    pub fn letters(&self) -> &[(usize, i64)] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &(g, e) in &other.0 {
            w.push(g, e);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&(g, e)| (g, -e)).collect())
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        (0..k.unsigned_abs()).fold(Word::default(), |acc, _| acc.mul(&base))
    }

    /// `a⁻¹ b⁻¹ a b`
    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.inverse().mul(&b.inverse()).mul(a).mul(b)
    }

    /// Renders with generator names, letters separated by `*`.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        struct D<'a>(&'a Word, &'a [String]);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                for (i, &(g, e)) in self.0 .0.iter().enumerate() {
                    if i > 0 {
                        write!(f, "*")?;
                    }
                    write!(f, "{}", self.1[g])?;
                    if e != 1 {
                        write!(f, "^{e}")?;
                    }
                }
                Ok(())
            }
        }
        D(self, names)
    }
}

/// Generators and relators of a pro-p group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    names: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(names: Vec<String>, relators: Vec<Word>) -> Result<Self, PresentationError> {
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(PresentationError::Syntax { pos: 0, msg: format!("duplicate generator `{a}`") });
            }
        }
        for r in &relators {
            if r.is_empty() {
                return Err(PresentationError::EmptyRelator { pos: 0 });
            }
            if r.letters().iter().any(|&(g, _)| g >= names.len()) {
                return Err(PresentationError::Syntax { pos: 0, msg: "generator index out of range".into() });
            }
        }
        Ok(Presentation { names, relators })
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("gens {};\n", self.names.join(" "));
        for r in &self.relators {
            s.push_str(&format!("rel {};\n", r.display_with(&self.names)));
        }
        s
    }
}

/// Parses `gens <name> ... ;` followed by `rel <word> ;` statements.
///
/// A word is a whitespace-free product of atoms: a generator `g`, a power
/// `g^k`, a commutator `[w1,w2]` (expanded to `w1⁻¹w2⁻¹w1w2`), or a group
/// `(w)`; brackets and groups may also carry an exponent. Atoms may be
/// separated by `*`. Generator names are matched longest first.
pub fn parse_presentation(text: &str) -> Result<Presentation, PresentationError> {
    let mut names: Option<Vec<String>> = None;
    let mut relators = Vec::new();
    let mut offset = 0;
    for stmt in text.split_inclusive(';') {
        let start = offset;
        offset += stmt.len();
        let body = stmt.strip_suffix(';');
        let trimmed = body.unwrap_or(stmt);
        let lead = trimmed.len() - trimmed.trim_start().len();
        let content = trimmed.trim();
        if content.is_empty() {
            if body.is_some() {
                return Err(PresentationError::Syntax { pos: start, msg: "empty statement".into() });
            }
            continue;
        }
        if body.is_none() {
            return Err(PresentationError::Syntax { pos: offset, msg: "missing `;`".into() });
        }
        let pos = start + lead;
        let (kw, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        let rest_pos = pos + kw.len() + (content.len() - kw.len() - rest.trim_start().len()).min(content.len());
        match kw {
            "gens" => {
                if names.is_some() {
                    return Err(PresentationError::Syntax { pos, msg: "repeated `gens`".into() });
                }
                let list: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                for (i, nm) in list.iter().enumerate() {
                    let ok = nm.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                        && nm.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
                    if !ok {
                        return Err(PresentationError::Syntax { pos, msg: format!("bad generator name `{nm}`") });
                    }
                    if list[..i].contains(nm) {
                        return Err(PresentationError::Syntax { pos, msg: format!("duplicate generator `{nm}`") });
                    }
                }
                names = Some(list);
            }
            "rel" => {
                let Some(names) = names.as_ref() else {
                    return Err(PresentationError::Syntax { pos, msg: "`rel` before `gens`".into() });
                };
                let word_text = rest.trim();
                if word_text.is_empty() {
                    return Err(PresentationError::EmptyRelator { pos });
                }
                if let Some(ws) = word_text.find(char::is_whitespace) {
                    return Err(PresentationError::Syntax {
                        pos: rest_pos + ws,
                        msg: "whitespace inside word".into(),
                    });
                }
                let mut parser = WordParser { src: word_text.as_bytes(), pos: 0, base: rest_pos, names };
                let w = parser.word()?;
                if parser.pos != parser.src.len() {
                    return Err(parser.err(format!("unexpected `{}`", parser.src[parser.pos] as char)));
                }
                if w.is_empty() {
                    return Err(PresentationError::EmptyRelator { pos });
                }
                relators.push(w);
            }
            other => {
                return Err(PresentationError::Syntax { pos, msg: format!("unknown statement `{other}`") });
            }
        }
    }
    let names = names.ok_or(PresentationError::Syntax { pos: 0, msg: "missing `gens`".into() })?;
    Presentation::new(names, relators)
}

struct WordParser<'a> {
    src: &'a [u8],
    pos: usize,
    base: usize,
    names: &'a [String],
}

impl WordParser<'_> {
    fn err(&self, msg: String) -> PresentationError {
        PresentationError::Syntax { pos: self.base + self.pos, msg }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn word(&mut self) -> Result<Word, PresentationError> {
        let mut w = Word::default();
        loop {
            match self.peek() {
                None | Some(b',') | Some(b']') | Some(b')') => return Ok(w),
                Some(b'*') if !w.is_empty() => {
                    self.pos += 1;
                }
                _ => {}
            }
            let atom = self.atom()?;
            w = w.mul(&atom);
        }
    }

    fn atom(&mut self) -> Result<Word, PresentationError> {
        let base = match self.peek() {
            Some(b'[') => {
                self.pos += 1;
                let a = self.word()?;
                if self.peek() != Some(b',') {
                    return Err(self.err("expected `,` in commutator".into()));
                }
                self.pos += 1;
                let b = self.word()?;
                if self.peek() != Some(b']') {
                    return Err(self.err("expected `]`".into()));
                }
                self.pos += 1;
                Word::commutator(&a, &b)
            }
            Some(b'(') => {
                self.pos += 1;
                let a = self.word()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`".into()));
                }
                self.pos += 1;
                a
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => self.generator()?,
            Some(c) => return Err(self.err(format!("unexpected `{}`", c as char))),
            None => return Err(self.err("unexpected end of word".into())),
        };
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let start = self.pos;
            if self.peek() == Some(b'-') {
                self.pos += 1;
            }
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
            let k: i64 = match text.parse() {
                Ok(k) if k != 0 => k,
                _ => {
                    return Err(PresentationError::MalformedExponent { pos: self.base + start, text: text.into() })
                }
            };
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn generator(&mut self) -> Result<Word, PresentationError> {
        let rest = &self.src[self.pos..];
        let best = self
            .names
            .iter()
            .enumerate()
            .filter(|(_, nm)| rest.starts_with(nm.as_bytes()))
            .max_by_key(|(_, nm)| nm.len());
        match best {
            Some((g, nm)) => {
                self.pos += nm.len();
                Ok(Word::generator(g))
            }
            None => {
                let len = rest.iter().take_while(|c| c.is_ascii_alphanumeric() || **c == b'_').count();
                let name = String::from_utf8_lossy(&rest[..len]).into_owned();
                Err(PresentationError::UnknownGenerator { pos: self.base + self.pos, name })
            }
        }
    }
}

/// Coordinates of an element of `S / S^(3)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalFormS3 {
    p: u8,
    /// exponents `c_i` mod `p²`
    c: Vec<u64>,
    /// `d[i][j]` mod p for `i < j`; zero on and below the diagonal
    d: Vec<Vec<u8>>,
}

impl NormalFormS3 {
    pub fn identity(p: u8, n: usize) -> Self {
        NormalFormS3 { p, c: vec![0; n], d: vec![vec![0; n]; n] }
    }

    pub fn p(&self) -> u8 {
        self.p
    }

    pub fn c(&self) -> &[u64] {
        &self.c
    }

    pub fn d(&self, i: usize, j: usize) -> u8 {
        self.d[i][j]
    }

    fn p2(&self) -> i64 {
        self.p as i64 * self.p as i64
    }

    /// Right multiplication by `x_k^s`.
    fn push_letter(&mut self, k: usize, s: i64) {
        let field = PrimeField::new(self.p as u64).expect("prime checked");
        for j in k + 1..self.c.len() {
            let t = self.c[j] as i64;
            if t != 0 {
                self.d[k][j] = field.reduce(self.d[k][j] as i64 - s * t);
            }
        }
        self.c[k] = (self.c[k] as i64 + s).rem_euclid(self.p2()) as u64;
    }

    /// Group law on normal forms.
    pub fn mul(&self, other: &NormalFormS3) -> NormalFormS3 {
        let field = PrimeField::new(self.p as u64).expect("prime checked");
        let n = self.c.len();
        let mut out = self.clone();
        for i in 0..n {
            out.c[i] = (self.c[i] + other.c[i]) % self.p2() as u64;
            for j in i + 1..n {
                let cross = self.c[j] as i64 * other.c[i] as i64;
                out.d[i][j] = field.reduce(self.d[i][j] as i64 + other.d[i][j] as i64 - cross);
            }
        }
        out
    }

    pub fn inverse(&self) -> NormalFormS3 {
        let field = PrimeField::new(self.p as u64).expect("prime checked");
        let n = self.c.len();
        let mut out = self.clone();
        for i in 0..n {
            out.c[i] = (self.p2() as u64 - self.c[i]) % self.p2() as u64;
            for j in i + 1..n {
                out.d[i][j] = field.reduce(-(self.d[i][j] as i64) - self.c[i] as i64 * self.c[j] as i64);
            }
        }
        out
    }
}

/// Collects `w` into the normal form modulo `S^(3)`.
pub fn collect_mod_s3(w: &Word, n: usize, p: u8) -> Result<NormalFormS3, PresentationError> {
    PrimeField::new(p as u64)?;
    let mut nf = NormalFormS3::identity(p, n);
    for &(g, e) in w.letters() {
        if g >= n {
            return Err(PresentationError::Syntax { pos: 0, msg: format!("generator index {g} ≥ {n}") });
        }
        nf.push_letter(g, e);
    }
    Ok(nf)
}

/// Degree ≤ 2 part of the Magnus expansion `x_i ↦ 1 + X_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Magnus2 {
    /// coefficient of `X_i`, mod `p²`
    pub linear: Vec<u64>,
    /// coefficient of `X_i X_j`, mod p
    pub quadratic: Vec<Vec<u8>>,
}

/// Multiplies out `∏ (1 + X_g)^e` to degree 2. A power `(1 + X)^e` with any
/// integer `e` truncates to `1 + eX + C(e,2)X²`, which for `e = -1` is the
/// inverse `1 - X + X²`.
pub fn magnus_degree2(w: &Word, n: usize, p: u8) -> Result<Magnus2, PresentationError> {
    let field = PrimeField::new(p as u64)?;
    let p2 = p as i64 * p as i64;
    let mut lin = vec![0i64; n];
    let mut quad = vec![vec![0i64; n]; n];
    for &(g, e) in w.letters() {
        if g >= n {
            return Err(PresentationError::Syntax { pos: 0, msg: format!("generator index {g} ≥ {n}") });
        }
        // (1 + a + A)(1 + eX_g + C(e,2)X_g²): new quadratic terms a_i·e at (i, g)
        for i in 0..n {
            quad[i][g] = (quad[i][g] + lin[i] * e).rem_euclid(p as i64);
        }
        quad[g][g] = (quad[g][g] + (e * (e - 1) / 2)).rem_euclid(p as i64);
        lin[g] = (lin[g] + e).rem_euclid(p2);
    }
    Ok(Magnus2 {
        linear: lin.into_iter().map(|x| x as u64).collect(),
        quadratic: quad.into_iter().map(|row| row.into_iter().map(|x| field.reduce(x)).collect()).collect(),
    })
}

/// `(a, a_rel)` for a relator `r ≡ ∏ x_i^{p·a_i} ∏ [x_i,x_j]^{a_rel[i][j]}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelatorCoordinates {
    pub a: FpVec,
    /// strictly upper triangular, `n × n`
    pub arel: FpMat,
}

impl RelatorCoordinates {
    /// `a` followed by the upper-triangular entries of `a_rel` row by row.
    pub fn flatten(&self) -> FpVec {
        let n = self.a.dim();
        let mut coords = self.a.coords().to_vec();
        for i in 0..n {
            for j in i + 1..n {
                coords.push(self.arel.get(i, j));
            }
        }
        FpVec::from_raw(self.a.p(), coords)
    }
}

pub fn relator_coordinates(w: &Word, n: usize, p: u8) -> Result<RelatorCoordinates, PresentationError> {
    let nf = collect_mod_s3(w, n, p)?;
    if let Some(i) = nf.c.iter().position(|&c| c % p as u64 != 0) {
        return Err(PresentationError::NotFrattini { generator: i + 1 });
    }
    let a = FpVec::new(p, nf.c.iter().map(|&c| (c / p as u64) as u8).collect())?;
    let mut arel = FpMat::zeros(p, n, n);
    for i in 0..n {
        for j in i + 1..n {
            arel.set(i, j, nf.d[i][j]);
        }
    }
    Ok(RelatorCoordinates { a, arel })
}

/// The cup product `H¹(G) × H¹(G) → H²(G)` in the basis dual to the
/// generators, with `H²(G)` identified with `F_p^m` through the relators.
///
/// Off-diagonal products are `(χ_i ∪ χ_j)_r = a_rel[i][j]`. For p = 2 the
/// diagonal `(χ_i ∪ χ_i)_r = a_i` (the Bockstein coordinate), otherwise zero.
/// For p = 2, ε is the solution of `b(v_i, ε) = b(v_i, v_i)` with free
/// variables set to zero.
pub fn presentation_cup_product(pres: &Presentation, p: u8) -> Result<AugBilinearMap, PresentationError> {
    let field = PrimeField::new(p as u64)?;
    let n = pres.generator_count();
    let coords = pres
        .relators()
        .iter()
        .map(|r| relator_coordinates(r, n, p))
        .collect::<Result<Vec<_>, _>>()?;
    let m = coords.len();
    let flat: Vec<FpVec> = coords.iter().map(RelatorCoordinates::flatten).collect();
    let width = n + n * n.saturating_sub(1) / 2;
    if fpla::rank(&FpMat::from_rows(p, width, &flat)?) != m {
        return Err(PresentationError::DependentRelators);
    }
    let mut map = AugBilinearMap::zero(p, n, m);
    for (r, rc) in coords.iter().enumerate() {
        for i in 0..n {
            for j in i + 1..n {
                let x = rc.arel.get(i, j);
                map.entry_mut(i, j)[r] = x;
                map.entry_mut(j, i)[r] = field.neg(x);
            }
            if p == 2 {
                map.entry_mut(i, i)[r] = rc.a.get(i);
            }
        }
    }
    if p == 2 && n > 0 {
        // rows (i, r): Σ_k ε_k b(v_i, v_k)_r = b(v_i, v_i)_r
        let mut system = FpMat::zeros(p, n * m, n);
        let mut rhs = Vec::with_capacity(n * m);
        for i in 0..n {
            for r in 0..m {
                for k in 0..n {
                    system.set(i * m + r, k, map.entry(i, k)[r]);
                }
                rhs.push(map.entry(i, i)[r]);
            }
        }
        let eps = fpla::solve(&system, &FpVec::new(p, rhs)?)?.ok_or(PresentationError::NoAugmentation)?;
        map = AugBilinearMap::new(p, n, m, &all_products(&map), eps)?;
    }
    let vlabels = pres.names().iter().map(|nm| format!("χ_{nm}")).collect();
    let wlabels = (0..m).map(|r| format!("r{}", r + 1)).collect();
    let map = map.with_labels(Some(vlabels), Some(wlabels));
    if !map.is_valid() {
        return Err(PresentationError::NoAugmentation);
    }
    Ok(map)
}

fn all_products(map: &AugBilinearMap) -> Vec<FpVec> {
    let n = map.n();
    (0..n * n).map(|idx| map.product(idx / n, idx % n)).collect()
}

/// Generators `x1..xn` for the vertices and one commutator `[x_k, x_l]` per
/// edge `k < l`, in the edge order of the graph.
pub fn raag_presentation(g: &SimplicialGraph) -> Presentation {
    let names = (0..g.n()).map(|i| format!("x{}", i + 1)).collect();
    let relators = g
        .edges()
        .into_iter()
        .map(|(k, l)| Word::commutator(&Word::generator(k), &Word::generator(l)))
        .collect();
    Presentation::new(names, relators).expect("commutators of distinct generators are nonempty")
}
