//! Labeled posets and their iterated integrals.
//!
//! A node labeled 0 carries dt/t. A node labeled σ = ±1 carries dt/(1−σt)
//! on level 1 and level 3 (the "3-poset" with both signs), and
//! 2dt/(1−t²) on level 2. The integral runs over the order polytope; it
//! splits into one iterated integral per linear extension, and each of
//! those is an alternating multiple zeta value.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rug::Rational;
use serde::Serialize;
use serde_json::Value;

use crate::composition::Composition;
use crate::error::{Error, Result};
use crate::real::ApproxReal;
use crate::series::SeriesConfig;
use crate::symbolic::RationalCombo;
use crate::values::{Family, ValueDescriptor};

/// Nodes beyond this make the extension tables too large to hold.
pub const MAX_NODES: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PosetLevel {
    One,
    Two,
    /// Level-one forms plus dt/(1+t).
    Three,
}

impl PosetLevel {
    pub fn from_int(v: i64) -> Result<Self> {
        match v {
            1 => Ok(PosetLevel::One),
            2 => Ok(PosetLevel::Two),
            3 => Ok(PosetLevel::Three),
            _ => Err(Error::Schema(format!("poset level must be 1, 2 or 3, got {v}"))),
        }
    }

    pub fn as_int(self) -> i64 {
        match self {
            PosetLevel::One => 1,
            PosetLevel::Two => 2,
            PosetLevel::Three => 3,
        }
    }

    fn allows(self, label: i8) -> bool {
        match self {
            PosetLevel::Three => (-1..=1).contains(&label),
            _ => label == 0 || label == 1,
        }
    }
}

/// Word read bottom to top along a linear extension.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntegralWord {
    pub letters: Vec<i8>,
    pub level: PosetLevel,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledPoset {
    level: PosetLevel,
    ids: Vec<String>,
    labels: Vec<i8>,
    covers: Vec<(usize, usize)>,
    /// below[i]: bitmask of the nodes strictly under node i.
    below: Vec<u64>,
}

impl LabeledPoset {
    pub fn new(
        level: PosetLevel,
        ids: Vec<String>,
        labels: Vec<i8>,
        covers: Vec<(usize, usize)>,
    ) -> Result<Self> {
        let n = ids.len();
        if labels.len() != n {
            return Err(Error::Schema("one label per node is required".into()));
        }
        if n > MAX_NODES {
            return Err(Error::Domain(format!("at most {MAX_NODES} nodes are supported, got {n}")));
        }
        let mut seen = std::collections::HashSet::new();
        for id in &ids {
            if !seen.insert(id) {
                return Err(Error::Schema(format!("duplicate node id '{id}'")));
            }
        }
        for (id, &l) in ids.iter().zip(&labels) {
            if !level.allows(l) {
                return Err(Error::Schema(format!(
                    "label {l} of node '{id}' not allowed on level {}",
                    level.as_int()
                )));
            }
        }
        for &(lo, hi) in &covers {
            if lo >= n || hi >= n {
                return Err(Error::Schema("cover refers to a missing node".into()));
            }
            if lo == hi {
                return Err(Error::Schema(format!("node '{}' covers itself", ids[lo])));
            }
        }
        let below = closure(n, &covers)
            .ok_or_else(|| Error::Schema("cover relations contain a cycle".into()))?;
        Ok(LabeledPoset { level, ids, labels, covers, below })
    }

    pub fn empty(level: PosetLevel) -> Self {
        LabeledPoset { level, ids: vec![], labels: vec![], covers: vec![], below: vec![] }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        Self::from_value(&v)
    }

    pub fn from_value(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::Schema("poset must be a JSON object".into()))?;
        let level = obj
            .get("level")
            .and_then(Value::as_i64)
            .ok_or_else(|| Error::Schema("missing integer 'level'".into()))?;
        let level = PosetLevel::from_int(level)?;
        let nodes = obj
            .get("nodes")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Schema("missing array 'nodes'".into()))?;
        let ids: Vec<String> = nodes.iter().map(node_id).collect::<Result<_>>()?;
        let index: HashMap<&str, usize> =
            ids.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let lookup = |v: &Value| -> Result<usize> {
            let id = node_id(v)?;
            index.get(id.as_str()).copied().ok_or_else(|| Error::Schema(format!("unknown node '{id}'")))
        };
        let mut covers = Vec::new();
        if let Some(cs) = obj.get("covers") {
            let cs = cs.as_array().ok_or_else(|| Error::Schema("'covers' must be an array".into()))?;
            for c in cs {
                let pair = c
                    .as_array()
                    .filter(|p| p.len() == 2)
                    .ok_or_else(|| Error::Schema("each cover is a pair [lo, hi]".into()))?;
                covers.push((lookup(&pair[0])?, lookup(&pair[1])?));
            }
        }
        let labels_obj = obj
            .get("labels")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Schema("missing object 'labels'".into()))?;
        let mut labels = vec![None; ids.len()];
        for (k, l) in labels_obj {
            let i = *index.get(k.as_str()).ok_or_else(|| Error::Schema(format!("label for unknown node '{k}'")))?;
            let l = l
                .as_i64()
                .filter(|x| (-1..=1).contains(x))
                .ok_or_else(|| Error::Schema(format!("label of '{k}' must be -1, 0 or 1")))?;
            labels[i] = Some(l as i8);
        }
        let labels = labels
            .into_iter()
            .zip(&ids)
            .map(|(l, id)| l.ok_or_else(|| Error::Schema(format!("node '{id}' has no label"))))
            .collect::<Result<_>>()?;
        Self::new(level, ids, labels, covers)
    }

    pub fn to_json(&self) -> Value {
        let labels: serde_json::Map<String, Value> =
            self.ids.iter().zip(&self.labels).map(|(i, &l)| (i.clone(), Value::from(l))).collect();
        serde_json::json!({
            "level": self.level.as_int(),
            "nodes": self.ids,
            "covers": self.covers.iter().map(|&(a, b)| [&self.ids[a], &self.ids[b]]).collect::<Vec<_>>(),
            "labels": labels,
        })
    }

    pub fn level(&self) -> PosetLevel {
        self.level
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn labels(&self) -> &[i8] {
        &self.labels
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn less(&self, a: usize, b: usize) -> bool {
        self.below[b] >> a & 1 == 1
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        a == b || self.less(a, b) || self.less(b, a)
    }

    pub fn is_minimal(&self, i: usize) -> bool {
        self.below[i] == 0
    }

    pub fn is_maximal(&self, i: usize) -> bool {
        (0..self.len()).all(|j| !self.less(i, j))
    }

    /// Maximal nodes must not carry dt/(1−t) and minimal ones not dt/t.
    pub fn is_admissible(&self) -> bool {
        (0..self.len()).all(|i| {
            !(self.is_maximal(i) && self.labels[i] == 1) && !(self.is_minimal(i) && self.labels[i] == 0)
        })
    }

    pub fn incomparable_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if !self.comparable(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// X^b_a: the poset with the relation a < b adjoined.
    pub fn adjoin(&self, a: usize, b: usize) -> Result<Self> {
        if a >= self.len() || b >= self.len() || self.comparable(a, b) {
            return Err(Error::Domain("adjoined nodes must be distinct and incomparable".into()));
        }
        let mut covers = self.covers.clone();
        covers.push((a, b));
        Self::new(self.level, self.ids.clone(), self.labels.clone(), covers)
    }

    fn check_admissible(&self) -> Result<()> {
        if self.is_admissible() {
            Ok(())
        } else {
            Err(Error::Divergent("poset is not admissible".into()))
        }
    }
}

fn node_id(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        _ => Err(Error::Schema("node ids must be strings or numbers".into())),
    }
}

/// Transitive closure as "strictly below" masks; None on a cycle.
fn closure(n: usize, covers: &[(usize, usize)]) -> Option<Vec<u64>> {
    let mut up = vec![Vec::new(); n];
    let mut indeg = vec![0usize; n];
    for &(lo, hi) in covers {
        up[lo].push(hi);
        indeg[hi] += 1;
    }
    let mut order = Vec::with_capacity(n);
    let mut stack: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
    while let Some(i) = stack.pop() {
        order.push(i);
        for &j in &up[i] {
            indeg[j] -= 1;
            if indeg[j] == 0 {
                stack.push(j);
            }
        }
    }
    if order.len() != n {
        return None;
    }
    let mut below = vec![0u64; n];
    for &i in &order {
        for &j in &up[i] {
            below[j] |= below[i] | 1 << i;
        }
    }
    Some(below)
}

/// Multiset of words, keyed by letters.
pub type WordCounts = BTreeMap<Vec<i8>, u128>;

/// All linear extensions read as words, by recursion over down-sets with
/// memoization.
pub fn linear_extensions(x: &LabeledPoset) -> Result<WordCounts> {
    x.check_admissible()?;
    let full = if x.is_empty() { 0 } else { u64::MAX >> (64 - x.len()) };
    let mut memo: HashMap<u64, WordCounts> = HashMap::new();
    Ok(extend(x, 0, full, &mut memo))
}

fn extend(x: &LabeledPoset, placed: u64, full: u64, memo: &mut HashMap<u64, WordCounts>) -> WordCounts {
    if placed == full {
        return BTreeMap::from([(Vec::new(), 1)]);
    }
    if let Some(w) = memo.get(&placed) {
        return w.clone();
    }
    let mut out = WordCounts::new();
    for i in 0..x.len() {
        if placed >> i & 1 == 0 && x.below[i] & !placed == 0 {
            for (w, c) in extend(x, placed | 1 << i, full, memo) {
                let mut word = Vec::with_capacity(w.len() + 1);
                word.push(x.labels[i]);
                word.extend(w);
                *out.entry(word).or_insert(0) += c;
            }
        }
    }
    memo.insert(placed, out.clone());
    out
}

/// The same multiset computed literally by I(X) = I(X^b_a) + I(X^a_b)
/// until the order is total. Exponential; for cross-checks only.
pub fn shuffle_extensions(x: &LabeledPoset) -> Result<WordCounts> {
    x.check_admissible()?;
    let mut out = WordCounts::new();
    shuffle_into(x, &mut out)?;
    Ok(out)
}

fn shuffle_into(x: &LabeledPoset, out: &mut WordCounts) -> Result<()> {
    match x.incomparable_pairs().first() {
        Some(&(a, b)) => {
            shuffle_into(&x.adjoin(a, b)?, out)?;
            shuffle_into(&x.adjoin(b, a)?, out)
        }
        None => {
            let mut idx: Vec<usize> = (0..x.len()).collect();
            idx.sort_by_key(|&i| x.below[i].count_ones());
            *out.entry(idx.iter().map(|&i| x.labels[i]).collect()).or_insert(0) += 1;
            Ok(())
        }
    }
}

/// Number of linear extensions by dynamic programming over down-sets.
pub fn count_linear_extensions(x: &LabeledPoset) -> u128 {
    let n = x.len();
    if n == 0 {
        return 1;
    }
    let full = u64::MAX >> (64 - n);
    let mut count: HashMap<u64, u128> = HashMap::from([(0, 1)]);
    for _ in 0..n {
        let mut next: HashMap<u64, u128> = HashMap::new();
        for (&d, &c) in &count {
            for i in 0..n {
                if d >> i & 1 == 0 && x.below[i] & !d == 0 {
                    *next.entry(d | 1 << i).or_insert(0) += c;
                }
            }
        }
        count = next;
    }
    count.get(&full).copied().unwrap_or(0)
}

impl IntegralWord {
    pub fn new(letters: Vec<i8>, level: PosetLevel) -> Result<Self> {
        if let Some(&l) = letters.iter().find(|&&l| !level.allows(l)) {
            return Err(Error::Schema(format!("letter {l} not allowed on level {}", level.as_int())));
        }
        Ok(IntegralWord { letters, level })
    }

    pub fn is_admissible(&self) -> bool {
        self.letters.first().map_or(true, |&l| l != 0) && self.letters.last().map_or(true, |&l| l != 1)
    }

    /// Splits into blocks σ 0^{k−1}; the composition carries the block
    /// leaders σ as its signs.
    pub fn blocks(&self) -> Result<Composition> {
        if !self.is_admissible() {
            return Err(Error::Divergent(format!("word {self} is not admissible")));
        }
        let mut parts = Vec::new();
        let mut signs = Vec::new();
        for &l in &self.letters {
            if l == 0 {
                *parts.last_mut().expect("admissible word starts with a nonzero letter") += 1;
            } else {
                parts.push(1);
                signs.push(l);
            }
        }
        Composition::with_signs(parts, signs)
    }
}

impl fmt::Display for IntegralWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self
            .letters
            .iter()
            .map(|&l| match (l, self.level) {
                (0, _) => "x",
                (1, PosetLevel::Two) => "y",
                (1, _) => "w1",
                _ => "w-1",
            })
            .collect();
        write!(f, "({})", names.join(","))
    }
}

/// Value of a block word with leaders σ_j: ζ(k; ε) · Πσ where
/// ε_j = σ_jσ_{j+1} and ε_r = σ_r.
fn signed_block_value(blocks: &Composition) -> (i8, ValueDescriptor) {
    let s = blocks.signs();
    let r = s.len();
    let eps: Vec<i8> = (0..r).map(|j| if j + 1 < r { s[j] * s[j + 1] } else { s[j] }).collect();
    let prod = s.iter().product::<i8>();
    let k = Composition::signed(blocks.parts(), &eps);
    (prod, ValueDescriptor::zeta(k))
}

/// Compact name of a word: ζ(k) on level 1, T(k) on level 2, and ±ζ(k; ε)
/// on level 3.
pub fn word_descriptor(w: &IntegralWord) -> Result<(i8, ValueDescriptor)> {
    let b = w.blocks()?;
    Ok(match w.level {
        PosetLevel::One => (1, ValueDescriptor::zeta(b)),
        PosetLevel::Two => (1, ValueDescriptor::new(Family::T, b)),
        PosetLevel::Three => signed_block_value(&b),
    })
}

/// The word as a combination of alternating MZVs. Level-two words are
/// expanded through 2dt/(1−t²) = dt/(1−t) + dt/(1+t) first.
pub fn word_combo(w: &IntegralWord) -> Result<RationalCombo> {
    let b = w.blocks()?;
    let mut out = RationalCombo::new();
    match w.level {
        PosetLevel::One | PosetLevel::Three => {
            let (c, v) = signed_block_value(&b);
            out.add_term(v, Rational::from(c));
        }
        PosetLevel::Two => {
            let r = b.depth();
            for mask in 0u32..1 << r {
                let signs: Vec<i8> = (0..r).map(|j| if mask >> j & 1 == 1 { -1 } else { 1 }).collect();
                let (c, v) = signed_block_value(&Composition::signed(b.parts(), &signs));
                out.add_term(v, Rational::from(c));
            }
        }
    }
    Ok(out)
}

pub fn word_value(w: &IntegralWord, cfg: &SeriesConfig) -> Result<ApproxReal> {
    word_combo(w)?.eval(cfg)
}

#[derive(Clone, Debug, Serialize)]
pub struct PosetValue {
    #[serde(serialize_with = "ser_real")]
    pub value: ApproxReal,
    pub combo: RationalCombo,
    pub extensions: u128,
}

fn ser_real<S: serde::Serializer>(v: &ApproxReal, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_decimal())
}

/// Exact decomposition into alternating MZVs, summed over extensions.
pub fn poset_combo(x: &LabeledPoset) -> Result<(RationalCombo, u128)> {
    let words = linear_extensions(x)?;
    let mut combo = RationalCombo::new();
    let mut total = 0u128;
    for (letters, mult) in words {
        let w = IntegralWord { letters, level: x.level };
        combo.add_scaled(&word_combo(&w)?, &Rational::from(mult));
        total += mult;
    }
    Ok((combo, total))
}

pub fn evaluate_poset(x: &LabeledPoset, cfg: &SeriesConfig) -> Result<PosetValue> {
    let (combo, extensions) = poset_combo(x)?;
    let value = combo.eval(cfg)?;
    Ok(PosetValue { value, combo, extensions })
}

/// Builder that appends nodes and returns their indices.
struct Builder {
    level: PosetLevel,
    labels: Vec<i8>,
    covers: Vec<(usize, usize)>,
}

impl Builder {
    fn new(level: PosetLevel) -> Self {
        Builder { level, labels: vec![], covers: vec![] }
    }

    fn node(&mut self, label: i8, under: Option<usize>) -> usize {
        let i = self.labels.len();
        self.labels.push(label);
        if let Some(u) = under {
            self.covers.push((u, i));
        }
        i
    }

    /// Blocks σ_j 0^{k_j−1} stacked upward; returns the top node.
    fn chain(&mut self, k: &Composition, signs: &[i8], mut under: Option<usize>) -> Option<usize> {
        for (&p, &s) in k.parts().iter().zip(signs) {
            under = Some(self.node(s, under));
            for _ in 1..p {
                under = Some(self.node(0, under));
            }
        }
        under
    }

    fn finish(self) -> Result<LabeledPoset> {
        let ids = (1..=self.labels.len()).map(|i| format!("x{i}")).collect();
        LabeledPoset::new(self.level, ids, self.labels, self.covers)
    }
}

fn chain_signs(k: &Composition, level: PosetLevel) -> Result<Vec<i8>> {
    if level != PosetLevel::Three && k.is_signed() {
        return Err(Error::Domain("signed blocks need a level-3 poset".into()));
    }
    Ok(k.signs().to_vec())
}

/// The totally ordered diagram of k: ζ(k) on level 1, T(k) on level 2 and
/// λ_k(σ)/Πσ on level 3, where σ are the signs of k.
pub fn chain_poset(k: &Composition, level: PosetLevel) -> Result<LabeledPoset> {
    if k.is_empty() {
        return Err(Error::Domain("chain of an empty composition".into()));
    }
    let signs = chain_signs(k, level)?;
    let mut b = Builder::new(level);
    b.chain(k, &signs, None);
    b.finish()
}

/// Chains of k and l under a shared top dt/t: I_L(k;l) on level 1,
/// I_A(k;l) on level 2, I_λ on level 3. Either composition may be empty.
pub fn product_poset(k: &Composition, l: &Composition, level: PosetLevel) -> Result<LabeledPoset> {
    let (sk, sl) = (chain_signs(k, level)?, chain_signs(l, level)?);
    let mut b = Builder::new(level);
    let tk = b.chain(k, &sk, None);
    let tl = b.chain(l, &sl, None);
    let top = b.node(0, tk);
    if let Some(t) = tl {
        b.covers.push((t, top));
    }
    b.finish()
}

/// Zig-zag diagram whose integral is ζ((k;σ)⊛(l;{1}_s)★)/Πσ′ with
/// σ′_j = σ_j⋯σ_r. The signs σ are those of k; l must be unsigned.
pub fn ky_poset(k: &Composition, l: &Composition) -> Result<LabeledPoset> {
    if k.is_empty() || l.is_empty() {
        return Err(Error::Domain("ky_poset needs nonempty k and l".into()));
    }
    if l.is_signed() {
        return Err(Error::Domain("ky_poset takes an unsigned l".into()));
    }
    let s = k.signs();
    let mut primed = s.to_vec();
    for j in (0..s.len().saturating_sub(1)).rev() {
        primed[j] = primed[j] * primed[j + 1];
    }
    let level = if k.is_signed() { PosetLevel::Three } else { PosetLevel::One };
    let mut b = Builder::new(level);
    let mut top = b.chain(k, &primed, None);
    let lp = l.parts();
    for _ in 0..lp[lp.len() - 1] {
        top = Some(b.node(0, top));
    }
    // Each earlier block of l hangs below the top of the block after it.
    let mut upper = top.expect("nonempty chain");
    for &p in lp[..lp.len() - 1].iter().rev() {
        let bottom = b.node(1, None);
        b.covers.push((bottom, upper));
        let mut t = bottom;
        for _ in 1..p {
            t = b.node(0, Some(t));
        }
        upper = t;
    }
    b.finish()
}

/// ψ(k; s) = I_A(k; {1}_{s−1}) through the poset engine.
pub fn psi_value(k: &Composition, s: usize, cfg: &SeriesConfig) -> Result<ApproxReal> {
    if s == 0 {
        return Err(Error::Domain("ψ(k; s) needs s ≥ 1".into()));
    }
    let x = product_poset(k, &Composition::repeat(1, s - 1), PosetLevel::Two)?;
    Ok(evaluate_poset(&x, cfg)?.value)
}

/// ξ(k; s) = I_L(k; {1}_{s−1}) through the poset engine.
pub fn xi_poset_value(k: &Composition, s: usize, cfg: &SeriesConfig) -> Result<ApproxReal> {
    if s == 0 {
        return Err(Error::Domain("ξ(k; s) needs s ≥ 1".into()));
    }
    let x = product_poset(k, &Composition::repeat(1, s - 1), PosetLevel::One)?;
    Ok(evaluate_poset(&x, cfg)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::values::{big_t_value, zeta};

    fn c(p: &[u32]) -> Composition {
        Composition::from_slice(p)
    }

    fn cfg() -> SeriesConfig {
        SeriesConfig { bits: 128, terms: 1 << 12, max_terms: 1 << 16, tol: 1e-12 }
    }

    fn val(x: &LabeledPoset) -> f64 {
        evaluate_poset(x, &cfg()).unwrap().value.to_f64()
    }

    #[test]
    fn chains() {
        let pi2 = std::f64::consts::PI.powi(2);
        assert!((val(&chain_poset(&c(&[2]), PosetLevel::One).unwrap()) - pi2 / 6.0).abs() < 1e-12);
        assert!((val(&chain_poset(&c(&[2]), PosetLevel::Two).unwrap()) - pi2 / 4.0).abs() < 1e-12);
        let neg = chain_poset(&Composition::signed(&[1], &[-1]), PosetLevel::Three).unwrap();
        assert!((val(&neg) - 2f64.ln()).abs() < 1e-12);
        assert!((val(&LabeledPoset::empty(PosetLevel::One)) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn word_dictionary() {
        let pi2 = std::f64::consts::PI.powi(2);
        let w = IntegralWord::new(vec![-1, 0], PosetLevel::Three).unwrap();
        assert!((word_value(&w, &cfg()).unwrap().to_f64() - pi2 / 12.0).abs() < 1e-12);
        let y = IntegralWord::new(vec![1, 0], PosetLevel::Two).unwrap();
        let a = word_value(&IntegralWord::new(vec![1, 0], PosetLevel::One).unwrap(), &cfg()).unwrap();
        let b = word_value(&w, &cfg()).unwrap();
        let t = word_value(&y, &cfg()).unwrap();
        assert!(t.distance(&(&a + &b)) < 1e-12);
        assert_eq!(word_descriptor(&y).unwrap().1.to_string(), "T(2)");
        assert!(IntegralWord::new(vec![0, 1], PosetLevel::One).unwrap().blocks().is_err());
    }

    #[test]
    fn json_round_trip_and_errors() {
        let x = ky_poset(&c(&[2, 1]), &c(&[1, 2])).unwrap();
        let back = LabeledPoset::from_value(&x.to_json()).unwrap();
        assert_eq!(back, x);
        let cyc = r#"{"level":1,"nodes":["a","b"],"covers":[["a","b"],["b","a"]],"labels":{"a":1,"b":0}}"#;
        assert!(matches!(LabeledPoset::from_json(cyc), Err(Error::Schema(_))));
        let bad = r#"{"level":1,"nodes":["a"],"covers":[],"labels":{"a":-1}}"#;
        assert!(matches!(LabeledPoset::from_json(bad), Err(Error::Schema(_))));
        let top1 = r#"{"level":1,"nodes":[1,2],"covers":[[1,2]],"labels":{"1":1,"2":1}}"#;
        let x = LabeledPoset::from_json(top1).unwrap();
        assert!(matches!(linear_extensions(&x), Err(Error::Divergent(_))));
    }

    #[test]
    fn hasse_example_is_admissible() {
        // x1<x2>x3<x4<x5>x6<x7<x8, labels (1,0,−1,0,0,−1,0,0).
        let ids = (1..=8).map(|i| format!("x{i}")).collect();
        let covers = vec![(0, 1), (2, 1), (2, 3), (3, 4), (5, 4), (5, 6), (6, 7)];
        let x = LabeledPoset::new(PosetLevel::Three, ids, vec![1, 0, -1, 0, 0, -1, 0, 0], covers).unwrap();
        assert!(x.is_admissible());
        let v = evaluate_poset(&x, &cfg()).unwrap();
        assert_eq!(v.extensions, count_linear_extensions(&x));
        assert!(v.value.to_f64().is_finite() && v.value.to_f64() > 0.0);
    }

    #[test]
    fn extension_counts() {
        let two = product_poset(&c(&[2]), &c(&[2]), PosetLevel::One).unwrap();
        // Two 2-chains under a common top: C(4,2) orders of the chains.
        assert_eq!(count_linear_extensions(&two), 6);
        let words = linear_extensions(&two).unwrap();
        assert_eq!(words.values().sum::<u128>(), 6);
        assert_eq!(words, shuffle_extensions(&two).unwrap());
        let ch = chain_poset(&c(&[3, 1, 2]), PosetLevel::One).unwrap();
        assert_eq!(linear_extensions(&ch).unwrap(), BTreeMap::from([(vec![1, 0, 0, 1, 1, 0], 1)]));
    }

    #[test]
    fn ky_shape_matches_series() {
        use crate::convolution::ky_zeta;
        for (k, l) in [(vec![2], vec![2]), (vec![1], vec![1, 1]), (vec![2, 1], vec![1, 2])] {
            let x = ky_poset(&c(&k), &c(&l)).unwrap();
            let a = val(&x);
            let b = ky_zeta(&c(&k), &c(&l), &cfg()).unwrap().to_f64();
            assert!((a - b).abs() < 1e-9, "{k:?} {l:?}: {a} vs {b}");
        }
    }

    #[test]
    fn xi_and_psi_first_values() {
        let z3 = zeta(&c(&[3]), &cfg()).unwrap().to_f64();
        assert!((xi_poset_value(&c(&[2]), 1, &cfg()).unwrap().to_f64() - z3).abs() < 1e-12);
        let t3 = big_t_value(&c(&[1, 2]), &cfg()).unwrap().to_f64();
        assert!((psi_value(&c(&[1, 1]), 1, &cfg()).unwrap().to_f64() - t3).abs() < 1e-12);
    }
}
