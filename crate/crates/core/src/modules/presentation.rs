use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};
use crate::groebner::{syzygy_vectors, unit_vector, Submodule};
use crate::poly::parse::{parse_polynomial_list, ParseError};
use crate::poly::{CoordinateRing, Polynomial, RingMap};

/// An element of a free module `R^b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeElement {
    ring: CoordinateRing,
    coords: Vec<Polynomial>,
}

impl FreeElement {
    pub fn new(ring: &CoordinateRing, coords: Vec<Polynomial>) -> Result<Self> {
        for c in &coords {
            ring.check(c)?;
        }
        Ok(FreeElement { ring: ring.clone(), coords: coords.iter().map(|c| ring.reduce(c)).collect() })
    }

    pub fn unit(ring: &CoordinateRing, rank: usize, j: usize) -> Self {
        FreeElement { ring: ring.clone(), coords: unit_vector(ring, rank, j) }
    }

    pub fn ring(&self) -> &CoordinateRing {
        &self.ring
    }

    pub fn coords(&self) -> &[Polynomial] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, f: &Polynomial) -> FreeElement {
        FreeElement { ring: self.ring.clone(), coords: self.coords.iter().map(|c| self.ring.mul(c, f)).collect() }
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coords.iter().map(|c| self.ring.fmt_poly(c)).collect()
    }
}

impl fmt::Display for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

/// `coker(M: R^a → R^b)`: `b` generators and `a` relation columns of length `b`.
///
/// When the module is (isomorphic to) an ideal, `values` holds the image of each
/// generator in the ring; every relation column then satisfies `Σ M_ij · values_i = 0`.
#[derive(Clone, Debug)]
pub struct Presentation {
    ring: CoordinateRing,
    generators: usize,
    columns: Vec<Vec<Polynomial>>,
    values: Option<Vec<Polynomial>>,
}

impl Presentation {
    /// Entries are reduced modulo the ring relations; zero columns are dropped.
    pub fn new(ring: &CoordinateRing, generators: usize, columns: Vec<Vec<Polynomial>>) -> Result<Self> {
        let mut cols = Vec::with_capacity(columns.len());
        for c in columns {
            if c.len() != generators {
                return Err(Error::InvalidArgument(format!(
                    "relation column has {} entries, expected {generators}",
                    c.len()
                )));
            }
            let mut reduced = Vec::with_capacity(generators);
            for p in &c {
                ring.check(p)?;
                reduced.push(ring.reduce(p));
            }
            if reduced.iter().any(|p| !p.is_zero()) {
                cols.push(reduced);
            }
        }
        Ok(Presentation { ring: ring.clone(), generators, columns: cols, values: None })
    }

    /// From the rows of the `b × a` matrix.
    pub fn from_rows(ring: &CoordinateRing, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let b = rows.len();
        let a = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != a) {
            return Err(Error::InvalidArgument("ragged relation matrix".into()));
        }
        let columns = (0..a).map(|j| rows.iter().map(|r| r[j].clone()).collect()).collect();
        Self::new(ring, b, columns)
    }

    /// The free module `R^rank`.
    pub fn free(ring: &CoordinateRing, rank: usize) -> Self {
        Presentation { ring: ring.clone(), generators: rank, columns: Vec::new(), values: None }
    }

    /// Attaches generator values; each relation must map to zero.
    pub fn with_values(mut self, values: Vec<Polynomial>) -> Result<Self> {
        if values.len() != self.generators {
            return Err(Error::InvalidArgument("one value per generator required".into()));
        }
        for c in &self.columns {
            let mut acc = self.ring.zero();
            for (m, v) in c.iter().zip(&values) {
                acc = &acc + &(m * v);
            }
            if !self.ring.is_zero(&acc) {
                return Err(Error::InvalidArgument("generator values do not satisfy the relations".into()));
            }
        }
        self.values = Some(values.iter().map(|v| self.ring.reduce(v)).collect());
        Ok(self)
    }

    pub fn ring(&self) -> &CoordinateRing {
        &self.ring
    }

    pub fn num_generators(&self) -> usize {
        self.generators
    }

    pub fn num_relations(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[Vec<Polynomial>] {
        &self.columns
    }

    pub fn values(&self) -> Option<&[Polynomial]> {
        self.values.as_deref()
    }

    /// The `b × a` matrix as rows.
    pub fn matrix(&self) -> Vec<Vec<Polynomial>> {
        (0..self.generators).map(|i| self.columns.iter().map(|c| c[i].clone()).collect()).collect()
    }

    /// The image of the relation matrix as a submodule of `R^b`.
    pub fn relation_module(&self) -> Submodule {
        Submodule::new(&self.ring, self.generators, self.columns.clone()).expect("columns have length b")
    }

    /// Whether the class of `v ∈ R^b` vanishes in the module.
    pub fn is_zero_class(&self, v: &[Polynomial]) -> bool {
        self.relation_module().contains(v)
    }

    pub fn is_zero_module(&self) -> bool {
        self.relation_module().is_everything()
    }

    /// Appends relation columns.
    pub fn with_columns(&self, extra: &[Vec<Polynomial>]) -> Result<Self> {
        let mut cols = self.columns.clone();
        cols.extend(extra.iter().cloned());
        let mut p = Presentation::new(&self.ring, self.generators, cols)?;
        p.values = self.values.clone();
        Ok(p)
    }

    /// Applies `φ` entrywise (and to the generator values): the pullback `φ*`.
    pub fn map_ring(&self, phi: &RingMap) -> Result<Self> {
        if phi.source() != &self.ring {
            return Err(Error::InvalidArgument("presentation is not over the map's source".into()));
        }
        let cols = self
            .columns
            .iter()
            .map(|c| c.iter().map(|p| phi.apply(p)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let mut p = Presentation::new(phi.target(), self.generators, cols)?;
        if let Some(v) = &self.values {
            p.values = Some(v.iter().map(|x| phi.apply(x)).collect::<Result<Vec<_>>>()?);
        }
        Ok(p)
    }

    /// Generator degrees making every column homogeneous, if the matrix is graded.
    pub fn grading(&self) -> Option<Vec<i64>> {
        if self.ring.relations().iter().any(|r| !r.is_homogeneous()) {
            return None;
        }
        let b = self.generators;
        let mut deg: Vec<Option<i64>> = vec![None; b];
        // column degree = deg(entry) + deg(generator)
        let mut coldeg: Vec<Option<i64>> = vec![None; self.columns.len()];
        for c in &self.columns {
            if c.iter().any(|p| !p.is_homogeneous()) {
                return None;
            }
        }
        for start in 0..b {
            if deg[start].is_some() {
                continue;
            }
            let seed = match &self.values {
                Some(v) if !v[start].is_zero() && v[start].is_homogeneous() => v[start].total_degree(),
                _ => 0,
            };
            deg[start] = Some(seed);
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                let di = deg[i].unwrap();
                for (j, c) in self.columns.iter().enumerate() {
                    if c[i].is_zero() {
                        continue;
                    }
                    let d = di + c[i].total_degree();
                    match coldeg[j] {
                        Some(e) if e != d => return None,
                        Some(_) => continue,
                        None => coldeg[j] = Some(d),
                    }
                    for (k, p) in c.iter().enumerate() {
                        if p.is_zero() {
                            continue;
                        }
                        let dk = d - p.total_degree();
                        match deg[k] {
                            Some(e) if e != dk => return None,
                            Some(_) => {}
                            None => {
                                deg[k] = Some(dk);
                                queue.push_back(k);
                            }
                        }
                    }
                }
            }
        }
        Some(deg.into_iter().map(|d| d.unwrap_or(0)).collect())
    }

    /// Removes generators killed by a relation with a constant entry, then redundant
    /// relation columns. The flag reports whether the input was graded, the case in which
    /// the result is a minimal presentation.
    pub fn minimize(&self) -> (Presentation, bool) {
        let graded = self.grading().is_some();
        let mut cols = self.columns.clone();
        let mut values = self.values.clone();
        let mut b = self.generators;
        loop {
            let pivot = cols.iter().enumerate().find_map(|(j, c)| {
                c.iter().position(|p| p.constant_value().is_some() && !p.is_zero()).map(|i| (i, j))
            });
            let Some((i, j)) = pivot else { break };
            let pc = cols.remove(j);
            let inv = pc[i].constant_value().unwrap().recip();
            for c in cols.iter_mut() {
                if c[i].is_zero() {
                    continue;
                }
                let f = c[i].scale(&inv);
                for (k, e) in c.iter_mut().enumerate() {
                    *e = self.ring.reduce(&(&*e - &(&f * &pc[k])));
                }
            }
            for c in cols.iter_mut() {
                c.remove(i);
            }
            if let Some(v) = values.as_mut() {
                v.remove(i);
            }
            b -= 1;
            cols.retain(|c| c.iter().any(|p| !p.is_zero()));
        }
        let reduced = Presentation { ring: self.ring.clone(), generators: b, columns: cols, values };
        let degrees = reduced.grading();
        let col_degree = |c: &Vec<Polynomial>| -> i64 {
            match &degrees {
                Some(d) => c.iter().zip(d).filter(|(p, _)| !p.is_zero()).map(|(p, di)| p.total_degree() + di).max().unwrap_or(0),
                None => c.iter().map(|p| p.total_degree()).max().unwrap_or(0),
            }
        };
        let mut order: Vec<usize> = (0..reduced.columns.len()).collect();
        order.sort_by_key(|&j| col_degree(&reduced.columns[j]));
        let kept = minimal_subset(&self.ring, b, order.iter().map(|&j| reduced.columns[j].clone()));
        (Presentation { columns: kept, ..reduced }, graded)
    }

    pub fn is_free(&self) -> bool {
        self.minimize().0.columns.is_empty()
    }

    /// Parses the presentation file format:
    ///
    /// ```text
    /// ring x, y
    /// generators: x^2, x*y^2, y^4
    /// ```
    /// or a generator count followed by `relations-matrix:` and one comma-separated line per
    /// row of the `b × a` matrix. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let file = parse_sections(text)?;
        let ring = file.ring.clone();
        let vars = ring.var_names().to_vec();
        let gens = file.section("generators").or_else(|| file.section("ideal"));
        let rows = file.rows("relations-matrix");
        let Some((gline, gtext)) = gens else {
            return Err(ParseError {
                line: file.lines,
                column: 1,
                message: "missing `generators:` section".into(),
                expected: vec!["`generators:`".into()],
            }
            .into());
        };
        let count: Option<usize> = gtext.trim().parse().ok();
        let values = match count {
            Some(_) => None,
            None => Some(parse_polynomial_list(gtext, &vars).map_err(|e| e.at_line(gline, file.offset(gline)))?),
        };
        let b = count.unwrap_or_else(|| values.as_ref().map_or(0, |v| v.len()));
        match rows {
            None => match values {
                Some(v) => presentation_of_ideal(&ring, &v),
                None => Ok(Presentation::free(&ring, b)),
            },
            Some(rows) => {
                let mut matrix = Vec::new();
                for (line, text) in rows {
                    matrix.push(parse_polynomial_list(text, &vars).map_err(|e| e.at_line(line, file.offset(line)))?);
                }
                if matrix.len() != b {
                    return Err(Error::InvalidArgument(format!(
                        "relations-matrix has {} rows but there are {b} generators",
                        matrix.len()
                    )));
                }
                let p = if b == 0 { Presentation::free(&ring, 0) } else { Presentation::from_rows(&ring, matrix)? };
                match values {
                    Some(v) => p.with_values(v),
                    None => Ok(p),
                }
            }
        }
    }

    /// The file format accepted by [`Presentation::parse`].
    pub fn to_file_string(&self) -> String {
        let mut s = format!("{}\n", self.ring.header());
        match &self.values {
            Some(v) => {
                let g: Vec<String> = v.iter().map(|p| self.ring.fmt_poly(p)).collect();
                s.push_str(&format!("generators: {}\n", g.join(", ")));
            }
            None => s.push_str(&format!("generators: {}\n", self.generators)),
        }
        if !self.columns.is_empty() {
            s.push_str("relations-matrix:\n");
            for row in self.matrix() {
                let r: Vec<String> = row.iter().map(|p| self.ring.fmt_poly(p)).collect();
                s.push_str(&format!("  {}\n", r.join(", ")));
            }
        }
        s
    }

    pub fn matrix_strings(&self) -> Vec<Vec<String>> {
        self.matrix().iter().map(|r| r.iter().map(|p| self.ring.fmt_poly(p)).collect()).collect()
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_file_string())
    }
}

/// Keeps, in the given order, each vector not already in the span of those kept.
pub(crate) fn minimal_subset(
    ring: &CoordinateRing,
    rank: usize,
    vectors: impl IntoIterator<Item = Vec<Polynomial>>,
) -> Vec<Vec<Polynomial>> {
    let mut kept: Vec<Vec<Polynomial>> = Vec::new();
    for v in vectors {
        if v.iter().all(|p| p.is_zero()) {
            continue;
        }
        let span = Submodule::new(ring, rank, kept.clone()).expect("consistent rank");
        if !span.contains(&v) {
            kept.push(v);
        }
    }
    kept
}

/// The module generated by `vectors`, presented on one generator per vector.
pub fn syzygies(vectors: &[FreeElement]) -> Result<Presentation> {
    let Some(first) = vectors.first() else {
        return Err(Error::NoGenerators);
    };
    let ring = first.ring().clone();
    let rank = first.rank();
    if vectors.iter().any(|v| v.rank() != rank || v.ring() != &ring) {
        return Err(Error::InvalidArgument("vectors live in different free modules".into()));
    }
    let coords: Vec<Vec<Polynomial>> = vectors.iter().map(|v| v.coords().to_vec()).collect();
    let syz = syzygy_vectors(&ring, &coords, rank);
    let p = Presentation::new(&ring, vectors.len(), syz)?;
    if rank == 1 {
        return p.with_values(coords.into_iter().map(|mut c| c.remove(0)).collect());
    }
    Ok(p)
}

/// The ideal generated by `gens` as a module: one generator per polynomial, relations the
/// syzygies.
pub fn presentation_of_ideal(ring: &CoordinateRing, gens: &[Polynomial]) -> Result<Presentation> {
    let mut nonzero = Vec::new();
    for g in gens {
        ring.check(g)?;
        if !ring.is_zero(g) {
            nonzero.push(ring.reduce(g));
        }
    }
    if nonzero.is_empty() {
        return Err(Error::NoGenerators);
    }
    let vectors = nonzero
        .into_iter()
        .map(|g| FreeElement::new(ring, vec![g]))
        .collect::<Result<Vec<_>>>()?;
    syzygies(&vectors)
}

/// `P ⊗ Q`: generator `(i, j)` has index `i·b_Q + j`; relations `M_P ⊗ 1` and `1 ⊗ M_Q`.
pub fn tensor_presentation(p: &Presentation, q: &Presentation) -> Result<Presentation> {
    if p.ring() != q.ring() {
        return Err(Error::InvalidArgument("tensor factors over different rings".into()));
    }
    let ring = p.ring();
    let (bp, bq) = (p.num_generators(), q.num_generators());
    let b = bp * bq;
    let mut cols = Vec::new();
    for c in p.columns() {
        for j in 0..bq {
            let mut v = vec![ring.zero(); b];
            for i in 0..bp {
                v[i * bq + j] = c[i].clone();
            }
            cols.push(v);
        }
    }
    for d in q.columns() {
        for i in 0..bp {
            let mut v = vec![ring.zero(); b];
            for j in 0..bq {
                v[i * bq + j] = d[j].clone();
            }
            cols.push(v);
        }
    }
    let t = Presentation::new(ring, b, cols)?;
    match (p.values(), q.values()) {
        (Some(a), Some(c)) => {
            let vals = a.iter().flat_map(|x| c.iter().map(move |y| ring.mul(x, y))).collect();
            // the tensor product of ideals maps onto their product; values record that map
            Ok(Presentation { values: Some(vals), ..t })
        }
        _ => Ok(t),
    }
}

struct SectionFile<'a> {
    ring: CoordinateRing,
    entries: Vec<(usize, &'a str, &'a str)>,
    raw: Vec<&'a str>,
    lines: usize,
}

impl<'a> SectionFile<'a> {
    fn section(&self, key: &str) -> Option<(usize, &'a str)> {
        self.entries.iter().find(|(_, k, _)| *k == key).map(|(l, _, v)| (*l, *v))
    }

    /// The non-empty lines after a `key:` line, up to the next section.
    fn rows(&self, key: &str) -> Option<Vec<(usize, &'a str)>> {
        let idx = self.entries.iter().position(|(_, k, _)| *k == key)?;
        let (line, _, inline) = self.entries[idx];
        let mut out = Vec::new();
        if !inline.trim().is_empty() {
            out.push((line, inline));
        }
        let end = self.entries.get(idx + 1).map_or(self.raw.len(), |(l, _, _)| l - 1);
        for l in line..end {
            let t = strip_comment(self.raw[l]);
            if !t.trim().is_empty() {
                out.push((l + 1, t));
            }
        }
        Some(out)
    }

    /// Column offset of the polynomial text on a given 1-based line.
    fn offset(&self, line: usize) -> usize {
        let raw = self.raw[line - 1];
        let text = self
            .entries
            .iter()
            .find(|(l, _, _)| *l == line)
            .map_or(strip_comment(raw), |(_, _, v)| *v);
        text.as_ptr() as usize - raw.as_ptr() as usize
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn parse_sections(text: &str) -> Result<SectionFile<'_>> {
    let raw: Vec<&str> = text.lines().collect();
    let mut ring = None;
    let mut entries = Vec::new();
    for (i, line) in raw.iter().enumerate() {
        let t = strip_comment(line);
        if t.trim().is_empty() {
            continue;
        }
        if ring.is_none() {
            if !t.trim_start().starts_with("ring") {
                return Err(ParseError {
                    line: i + 1,
                    column: 1,
                    message: "expected ring header".into(),
                    expected: vec!["`ring`".into()],
                }
                .into());
            }
            let r = crate::poly::parse::parse_ring_header(t).map_err(|e| match e {
                Error::Parse(p) => Error::Parse(p.at_line(i + 1, 0)),
                other => other,
            })?;
            ring = Some(r);
            continue;
        }
        let trimmed = t.trim_start();
        if let Some(colon) = trimmed.find(':') {
            let key = &trimmed[..colon];
            if key.chars().all(|c| c.is_ascii_alphabetic() || c == '-') {
                entries.push((i + 1, key, &trimmed[colon + 1..]));
            }
        }
    }
    let ring = ring.ok_or_else(|| ParseError {
        line: raw.len().max(1),
        column: 1,
        message: "missing ring header".into(),
        expected: vec!["`ring`".into()],
    })?;
    Ok(SectionFile { ring, entries, lines: raw.len().max(1), raw })
}

/// Parses `ring ...` followed by an `ideal:` (or `generators:`) line.
pub fn parse_ideal_file(text: &str) -> Result<crate::groebner::Ideal> {
    let file = parse_sections(text)?;
    let vars = file.ring.var_names().to_vec();
    let (line, gens) = file.section("ideal").or_else(|| file.section("generators")).ok_or_else(|| ParseError {
        line: file.lines,
        column: 1,
        message: "missing `ideal:` line".into(),
        expected: vec!["`ideal:`".into()],
    })?;
    let polys = parse_polynomial_list(gens, &vars).map_err(|e| e.at_line(line, file.offset(line)))?;
    crate::groebner::Ideal::new(&file.ring, polys)
}

/// Parses just a ring header line out of a file with other sections.
pub fn parse_ring_of_file(text: &str) -> Result<CoordinateRing> {
    Ok(parse_sections(text)?.ring)
}
