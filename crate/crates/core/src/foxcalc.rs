//! Free groups, Fox calculus, presentations, unitary representations and the map Φ = (ρ⊗ε)∘γ.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use rand::Rng;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::linalg::{kernel, MatK, MatLambda, Matrix};
use crate::ring::Ring;
use crate::scalars::CycloNumber;

/// Freely reduced word: a list of `(generator, ±1)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FreeWord {
    letters: Vec<(usize, i8)>,
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord::default()
    }

    pub fn generator(i: usize) -> Self {
        FreeWord { letters: vec![(i, 1)] }
    }

    /// Reduces the input. Exponents other than ±1 are expanded.
    pub fn new(letters: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let mut out: Vec<(usize, i8)> = Vec::new();
        for (g, e) in letters {
            let sign: i8 = if e < 0 { -1 } else { 1 };
            for _ in 0..e.unsigned_abs() {
                match out.last() {
                    Some(&(h, f)) if h == g && f == -sign => {
                        out.pop();
                    }
                    _ => out.push((g, sign)),
                }
            }
        }
        FreeWord { letters: out }
    }

    pub fn letters(&self) -> &[(usize, i8)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        FreeWord { letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.letters.iter().chain(&other.letters).map(|&(g, e)| (g, e as i64)))
    }

    /// Largest generator index used, if any.
    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|&(g, _)| g).max()
    }

    /// Exponent sum of each of `k` generators.
    pub fn exponent_sums(&self, k: usize) -> Vec<i64> {
        let mut v = vec![0; k];
        for &(g, e) in &self.letters {
            v[g] += e as i64;
        }
        v
    }

    /// Space-separated tokens using `names`, the format accepted by [`parse_word`].
    pub fn display<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        WordDisplay { word: self, names }
    }
}

struct WordDisplay<'a> {
    word: &'a FreeWord,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("1");
        }
        for (i, &(g, e)) in self.word.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            let fallback = format!("g{g}");
            let name = self.names.get(g).unwrap_or(&fallback);
            if e < 0 {
                write!(f, "{name}^-1")?;
            } else {
                f.write_str(name)?;
            }
        }
        Ok(())
    }
}

/// Parse whitespace-separated tokens `name`, `name^-1` or an uppercase shorthand for the inverse.
pub fn parse_word(text: &str, generators: &[String]) -> Result<FreeWord> {
    let mut letters = Vec::new();
    for (pos, tok) in text.split_whitespace().enumerate() {
        let loc = || format!("token {} {tok:?}", pos + 1);
        if tok == "1" {
            continue;
        }
        let (name, exp) = match tok.split_once('^') {
            Some((n, e)) => {
                let e: i64 = e.parse().map_err(|_| Error::parse(loc(), "exponent must be an integer"))?;
                (n, e)
            }
            None => (tok, 1),
        };
        if let Some(i) = generators.iter().position(|g| g == name) {
            letters.push((i, exp));
            continue;
        }
        let lower = name.to_lowercase();
        if name != lower {
            if let Some(i) = generators.iter().position(|g| *g == lower) {
                letters.push((i, -exp));
                continue;
            }
        }
        return Err(Error::parse(loc(), format!("unknown generator (known: {})", generators.join(", "))));
    }
    Ok(FreeWord::new(letters))
}

/// Formal integer combination of free-group words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupRingElement {
    terms: BTreeMap<FreeWord, i64>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(FreeWord::identity())
    }

    pub fn from_word(w: FreeWord) -> Self {
        let mut e = Self::zero();
        e.add_term(1, w);
        e
    }

    pub fn add_term(&mut self, c: i64, w: FreeWord) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(w).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.retain(|_, v| *v != 0);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FreeWord, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(c, w.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, c: i64) -> Self {
        let mut out = Self::zero();
        for (w, v) in self.terms() {
            out.add_term(c * v, w.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (u, a) in self.terms() {
            for (v, b) in other.terms() {
                out.add_term(a * b, u.mul(v));
            }
        }
        out
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        ElementDisplay { e: self, names }
    }
}

struct ElementDisplay<'a> {
    e: &'a GroupRingElement,
    names: &'a [String],
}

impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e.is_zero() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.e.terms().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            if i > 0 {
                write!(f, " {sign} ")?;
            } else if c < 0 {
                f.write_str("-")?;
            }
            if c.abs() != 1 {
                write!(f, "{}*", c.abs())?;
            }
            write!(f, "[{}]", w.display(self.names))?;
        }
        Ok(())
    }
}

/// ∂w/∂x_j as a sum over occurrences: `u` for each `w = u x_j v`, `−u x_j⁻¹` for each `w = u x_j⁻¹ v`.
pub fn fox_derivative(w: &FreeWord, j: usize) -> GroupRingElement {
    let mut out = GroupRingElement::zero();
    let mut prefix = FreeWord::identity();
    for &(g, e) in w.letters() {
        if g == j {
            if e > 0 {
                out.add_term(1, prefix.clone());
            } else {
                out.add_term(-1, prefix.mul(&FreeWord { letters: vec![(g, -1)] }));
            }
        }
        prefix.letters.push((g, e));
    }
    out
}

/// A surjection of the group onto ℤ, as the image of each generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Augmentation {
    pub values: Vec<i64>,
}

impl Augmentation {
    pub fn of_word(&self, w: &FreeWord) -> i64 {
        w.letters().iter().map(|&(g, e)| self.values[g] * e as i64).sum()
    }

    pub fn validate(&self, p: &Presentation) -> Result<()> {
        if self.values.len() != p.num_generators() {
            return Err(Error::Augmentation(format!(
                "{} values for {} generators",
                self.values.len(),
                p.num_generators()
            )));
        }
        for (i, r) in p.relators().iter().enumerate() {
            let w = self.of_word(r);
            if w != 0 {
                return Err(Error::Augmentation(format!("relator {} has weight {w}, expected 0", i + 1)));
            }
        }
        let g = self.values.iter().fold(0i64, |acc, v| acc.gcd(v));
        if g != 1 {
            return Err(Error::Augmentation(format!("image is {g}ℤ, not ℤ")));
        }
        Ok(())
    }
}

/// Group presentation `⟨x_1..x_k | r_1..r_s⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<FreeWord>,
    augmentation: Option<Augmentation>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<FreeWord>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::parse("generators", "at least one generator is required"));
        }
        for (i, g) in generators.iter().enumerate() {
            if g.is_empty() || g.contains(char::is_whitespace) || g.contains('^') {
                return Err(Error::parse(format!("generators[{i}]"), format!("invalid generator name {g:?}")));
            }
            if generators[..i].contains(g) {
                return Err(Error::parse(format!("generators[{i}]"), format!("duplicate generator {g:?}")));
            }
        }
        for (i, r) in relators.iter().enumerate() {
            if r.max_generator().is_some_and(|m| m >= generators.len()) {
                return Err(Error::parse(format!("relators[{i}]"), "refers to an unknown generator"));
            }
        }
        Ok(Presentation { generators, relators, augmentation: None })
    }

    /// Parse relator strings against the generator names.
    pub fn parse(generators: &[&str], relators: &[&str]) -> Result<Self> {
        let gens: Vec<String> = generators.iter().map(|s| s.to_string()).collect();
        let rels = relators
            .iter()
            .enumerate()
            .map(|(i, r)| {
                parse_word(r, &gens).map_err(|e| match e {
                    Error::Parse { location, message } => {
                        Error::Parse { location: format!("relators[{i}], {location}"), message }
                    }
                    other => other,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(gens, rels)
    }

    pub fn with_augmentation(mut self, eps: Augmentation) -> Result<Self> {
        eps.validate(&self)?;
        self.augmentation = Some(eps);
        Ok(self)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn relators(&self) -> &[FreeWord] {
        &self.relators
    }

    /// Generators minus relators.
    pub fn deficiency(&self) -> i64 {
        self.generators.len() as i64 - self.relators.len() as i64
    }

    pub fn user_augmentation(&self) -> Option<&Augmentation> {
        self.augmentation.as_ref()
    }

    /// The user-supplied augmentation if present, otherwise the abelianization.
    pub fn augmentation(&self) -> Result<Augmentation> {
        match &self.augmentation {
            Some(a) => Ok(a.clone()),
            None => abelianization_epsilon(self),
        }
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// Parse TOML: `generators`, `relators`, optional `[augmentation]` table.
    pub fn from_toml(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            generators: Vec<String>,
            #[serde(default)]
            relators: Vec<String>,
            augmentation: Option<BTreeMap<String, i64>>,
            #[serde(default)]
            #[allow(dead_code)]
            name: Option<String>,
        }
        let raw: Raw = toml::from_str(text).map_err(|e| toml_error(text, &e))?;
        let gens: Vec<&str> = raw.generators.iter().map(String::as_str).collect();
        let rels: Vec<&str> = raw.relators.iter().map(String::as_str).collect();
        let p = Self::parse(&gens, &rels)?;
        match raw.augmentation {
            None => Ok(p),
            Some(map) => {
                let mut values = vec![None; p.num_generators()];
                for (name, v) in map {
                    let i = p
                        .generator_index(&name)
                        .ok_or_else(|| Error::parse(format!("augmentation.{name}"), "unknown generator"))?;
                    values[i] = Some(v);
                }
                let values = values
                    .into_iter()
                    .enumerate()
                    .map(|(i, v)| {
                        v.ok_or_else(|| {
                            Error::parse("augmentation", format!("missing value for generator {:?}", p.generators[i]))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                p.with_augmentation(Augmentation { values })
            }
        }
    }
}

pub(crate) fn toml_error(text: &str, e: &toml::de::Error) -> Error {
    let location = match e.span() {
        Some(span) => {
            let before = &text[..span.start.min(text.len())];
            let line = before.matches('\n').count() + 1;
            let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
            format!("line {line}, column {column}")
        }
        None => "document".into(),
    };
    Error::parse(location, e.message().to_string())
}

/// Invariant factors of an integer matrix (nonzero ones only).
fn integer_invariant_factors(rows: &[Vec<i64>], cols: usize) -> Vec<i64> {
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
    let nrows = a.len();
    let mut factors = Vec::new();
    let mut k = 0;
    while k < nrows.min(cols) {
        let Some((pi, pj)) = (k..nrows)
            .flat_map(|i| (k..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i][j] != 0)
            .min_by_key(|&(i, j)| a[i][j].abs())
        else {
            break;
        };
        a.swap(k, pi);
        for row in a.iter_mut() {
            row.swap(k, pj);
        }
        let p = a[k][k];
        let mut clean = true;
        for i in k + 1..nrows {
            let q = a[i][k].div_euclid(p);
            if q != 0 {
                for j in k..cols {
                    a[i][j] -= q * a[k][j];
                }
            }
            clean &= a[i][k] == 0;
        }
        for j in k + 1..cols {
            let q = a[k][j].div_euclid(p);
            if q != 0 {
                for row in a.iter_mut() {
                    row[j] -= q * row[k];
                }
            }
            clean &= a[k][j] == 0;
        }
        if !clean {
            continue;
        }
        if let Some(i) = (k + 1..nrows).find(|&i| (k + 1..cols).any(|j| a[i][j] % p != 0)) {
            for j in k..cols {
                a[k][j] += a[i][j];
            }
            continue;
        }
        factors.push(p.abs() as i64);
        k += 1;
    }
    factors
}

/// The surjection onto H₁ ≅ ℤ, normalized so the first generator with nonzero image maps positively.
pub fn abelianization_epsilon(p: &Presentation) -> Result<Augmentation> {
    let k = p.num_generators();
    let rows: Vec<Vec<i64>> = p.relators().iter().map(|r| r.exponent_sums(k)).collect();
    let factors = integer_invariant_factors(&rows, k);
    let free_rank = k - factors.len();
    let torsion: Vec<i64> = factors.iter().copied().filter(|&d| d != 1).collect();
    if free_rank != 1 || !torsion.is_empty() {
        let mut desc = vec![format!("ℤ^{free_rank}")];
        desc.extend(torsion.iter().map(|d| format!("ℤ/{d}")));
        return Err(Error::Augmentation(format!(
            "H₁ of the presentation is {}, not ℤ; supply an [augmentation] table explicitly",
            desc.join(" ⊕ ")
        )));
    }
    // the rational kernel is one-dimensional; scale it to a primitive integer vector
    let m = Matrix::from_fn(rows.len(), k, |i, j| CycloNumber::from_int(rows[i][j]));
    let (_, basis) = kernel(&m);
    let v = basis.into_iter().next().ok_or_else(|| Error::Internal("empty kernel for H₁ = ℤ".into()))?;
    let rats: Vec<_> = v.iter().map(|c| c.to_rational().expect("rational kernel")).collect();
    let den = rats.iter().fold(num_bigint::BigInt::from(1), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<num_bigint::BigInt> = rats.iter().map(|q| (q * &den).to_integer()).collect();
    let g = ints.iter().fold(num_bigint::BigInt::from(0), |acc, x| acc.gcd(x));
    let mut values: Vec<i64> = ints
        .iter()
        .map(|x| i64::try_from(x / &g).map_err(|_| Error::Augmentation("augmentation value overflows".into())))
        .collect::<Result<_>>()?;
    if values.iter().find(|&&v| v != 0).is_some_and(|&v| v < 0) {
        values.iter_mut().for_each(|v| *v = -*v);
    }
    let eps = Augmentation { values };
    eps.validate(p)?;
    Ok(eps)
}

/// A unitary representation with cyclotomic entries, keyed by generator name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    order: u32,
    dimension: usize,
    matrices: BTreeMap<String, MatK>,
    /// Generators without an explicit matrix map to the identity.
    default_identity: bool,
}

impl Representation {
    pub fn new(order: u32, dimension: usize, matrices: BTreeMap<String, MatK>) -> Result<Self> {
        if order == 0 || dimension == 0 {
            return Err(Error::Representation("order and dimension must be positive".into()));
        }
        for (name, m) in &matrices {
            if m.shape() != (dimension, dimension) {
                return Err(Error::Representation(format!(
                    "matrix for {name} is {}x{}, expected {dimension}x{dimension}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(Representation { order, dimension, matrices, default_identity: false })
    }

    /// Every generator maps to the identity of size `dimension`.
    pub fn trivial(dimension: usize) -> Self {
        Representation { order: 1, dimension, matrices: BTreeMap::new(), default_identity: true }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn matrix(&self, name: &str) -> Option<MatK> {
        match self.matrices.get(name) {
            Some(m) => Some(m.clone()),
            None if self.default_identity => Some(MatK::identity(self.dimension)),
            None => None,
        }
    }

    /// Matrices in presentation generator order.
    pub fn resolve(&self, p: &Presentation) -> Result<Vec<MatK>> {
        for name in self.matrices.keys() {
            if p.generator_index(name).is_none() {
                return Err(Error::Representation(format!("matrix given for unknown generator {name:?}")));
            }
        }
        p.generators()
            .iter()
            .map(|g| self.matrix(g).ok_or_else(|| Error::Representation(format!("no matrix for generator {g:?}"))))
            .collect()
    }

    /// Checks unitarity and that every relator maps to the identity, exactly.
    pub fn validate(&self, p: &Presentation) -> Result<ResolvedRep> {
        let mats = self.resolve(p)?;
        let id = MatK::identity(self.dimension);
        let mut inverses = Vec::with_capacity(mats.len());
        for (g, m) in p.generators().iter().zip(&mats) {
            let adj = m.transpose().conjugate();
            if m.mul(&adj)? != id {
                return Err(Error::Representation(format!("matrix for {g:?} is not unitary")));
            }
            inverses.push(adj);
        }
        let rep = ResolvedRep { dimension: self.dimension, matrices: mats, inverses };
        for (i, r) in p.relators().iter().enumerate() {
            if rep.word(r) != id {
                return Err(Error::Representation(format!(
                    "relator {} ({}) does not map to the identity",
                    i + 1,
                    r.display(p.generators())
                )));
            }
        }
        Ok(rep)
    }

    /// Parse TOML: `cyclotomic_order`, `dimension`, `[matrices]` of cyclotomic literal strings,
    /// or `trivial = true`.
    pub fn from_toml(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            #[serde(default = "one")]
            cyclotomic_order: u32,
            dimension: usize,
            #[serde(default)]
            trivial: bool,
            #[serde(default)]
            matrices: BTreeMap<String, Vec<Vec<String>>>,
            #[serde(default)]
            #[allow(dead_code)]
            name: Option<String>,
        }
        fn one() -> u32 {
            1
        }
        let raw: Raw = toml::from_str(text).map_err(|e| toml_error(text, &e))?;
        let mut mats = BTreeMap::new();
        for (name, rows) in &raw.matrices {
            let parsed = rows
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    r.iter()
                        .enumerate()
                        .map(|(j, s)| {
                            CycloNumber::parse(raw.cyclotomic_order, s).map_err(|e| {
                                Error::parse(format!("matrices.{name}[{i}][{j}]"), e.to_string())
                            })
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            let m = Matrix::from_rows(parsed).map_err(|e| Error::parse(format!("matrices.{name}"), e.to_string()))?;
            mats.insert(name.clone(), m);
        }
        let mut rep = Self::new(raw.cyclotomic_order, raw.dimension, mats)?;
        rep.default_identity = raw.trivial;
        if !raw.trivial && rep.matrices.is_empty() {
            return Err(Error::parse("matrices", "no matrices given and `trivial` is not set"));
        }
        Ok(rep)
    }
}

/// A validated representation, in generator order.
#[derive(Clone, Debug)]
pub struct ResolvedRep {
    dimension: usize,
    matrices: Vec<MatK>,
    inverses: Vec<MatK>,
}

impl ResolvedRep {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn generator(&self, i: usize) -> &MatK {
        &self.matrices[i]
    }

    /// ρ(w).
    pub fn word(&self, w: &FreeWord) -> MatK {
        w.letters().iter().fold(MatK::identity(self.dimension), |acc, &(g, e)| {
            let m = if e > 0 { &self.matrices[g] } else { &self.inverses[g] };
            acc.mul(m).expect("square matrices of one size")
        })
    }
}

/// Σ c_w · ρ(w) · t^ε(w).
pub fn phi(e: &GroupRingElement, rho: &ResolvedRep, eps: &Augmentation) -> MatLambda {
    let m = rho.dimension();
    let mut acc = MatLambda::zeros(m, m);
    for (w, c) in e.terms() {
        let r = rho.word(w);
        let k = eps.of_word(w);
        let c = CycloNumber::from_int(c);
        let term = r.map(|v| LaurentPoly::monomial(v * &c, k));
        acc = acc.add(&term).expect("same shape");
    }
    acc
}

/// Φ(x_i − 1) = ρ(x_i) t^ε(x_i) − I.
pub fn phi_generator_minus_one(i: usize, rho: &ResolvedRep, eps: &Augmentation) -> MatLambda {
    let mut e = GroupRingElement::from_word(FreeWord::generator(i));
    e.add_term(-1, FreeWord::identity());
    phi(&e, rho, eps)
}

/// w − 1 = Σ_i (∂w/∂x_i)(x_i − 1) in ℤ[F_k], exactly.
pub fn fundamental_identity_holds(w: &FreeWord, k: usize) -> bool {
    let mut lhs = GroupRingElement::from_word(w.clone());
    lhs.add_term(-1, FreeWord::identity());
    let rhs = (0..k).fold(GroupRingElement::zero(), |acc, i| {
        let mut g = GroupRingElement::from_word(FreeWord::generator(i));
        g.add_term(-1, FreeWord::identity());
        acc.add(&fox_derivative(w, i).mul(&g))
    });
    lhs == rhs
}

/// The same identity after Φ: Φ(w) − I = Σ_i Φ(∂w/∂x_i) Φ(x_i − 1).
pub fn fundamental_identity_after_phi(w: &FreeWord, k: usize, rho: &ResolvedRep, eps: &Augmentation) -> bool {
    let mut lhs = GroupRingElement::from_word(w.clone());
    lhs.add_term(-1, FreeWord::identity());
    let lhs = phi(&lhs, rho, eps);
    let m = rho.dimension();
    let rhs = (0..k).fold(MatLambda::zeros(m, m), |acc, i| {
        let term = phi(&fox_derivative(w, i), rho, eps).mul(&phi_generator_minus_one(i, rho, eps)).expect("square");
        acc.add(&term).expect("same shape")
    });
    lhs == rhs
}

/// Uniform letters from x_0..x_{k−1} and their inverses, freely reduced afterwards.
pub fn random_word(rng: &mut impl Rng, k: usize, max_len: usize) -> FreeWord {
    let len = rng.random_range(0..=max_len);
    FreeWord::new((0..len).map(|_| (rng.random_range(0..k), if rng.random_bool(0.5) { 1 } else { -1 })))
}

/// A monomial unitary representation of the free group on `k` generators:
/// each generator maps to a permutation matrix times roots of unity.
pub fn random_free_representation(rng: &mut impl Rng, k: usize, dimension: usize, order: u32) -> ResolvedRep {
    let matrices: Vec<MatK> = (0..k)
        .map(|_| {
            let mut perm: Vec<usize> = (0..dimension).collect();
            for i in (1..dimension).rev() {
                perm.swap(i, rng.random_range(0..=i));
            }
            Matrix::from_fn(dimension, dimension, |i, j| {
                if perm[i] == j {
                    CycloNumber::root_of_unity(order, rng.random_range(0..order as i64))
                } else {
                    CycloNumber::zero().lift(order)
                }
            })
        })
        .collect();
    let inverses = matrices.iter().map(|m| m.transpose().conjugate()).collect();
    ResolvedRep { dimension, matrices, inverses }
}

/// ⟨x, y | u x u⁻¹ y⁻¹⟩ for a random word u: a deficiency-one presentation with x ~ y.
pub fn random_conjugation_presentation(rng: &mut impl Rng, max_len: usize) -> Presentation {
    let u = loop {
        let u = random_word(rng, 2, max_len);
        if !u.is_empty() {
            break u;
        }
    };
    let rel = u.mul(&FreeWord::generator(0)).mul(&u.inverse()).mul(&FreeWord::generator(1).inverse());
    Presentation::new(vec!["x".into(), "y".into()], vec![rel]).expect("two generators")
}
