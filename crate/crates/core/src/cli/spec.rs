use crate::error::{Error, Result};
use crate::exact_linalg::prime_power;
use crate::metric_groups::{Family, MetricGroup, PrimeFamilySpec};

fn perr(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(perr(self.pos, format!("expected '{}'", c as char)))
        }
    }

    fn number(&mut self) -> Result<(usize, u64)> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(perr(start, "expected a number"));
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        text.parse().map(|n| (start, n)).map_err(|_| perr(start, "number too large"))
    }

    fn term(&mut self) -> Result<PrimeFamilySpec> {
        self.skip_ws();
        let at = self.pos;
        let family = self
            .peek()
            .and_then(|c| Family::from_char(c as char))
            .ok_or_else(|| perr(at, "expected a family letter A-F"))?;
        self.pos += 1;
        self.expect(b'[')?;
        let (npos, base) = self.number()?;
        self.skip_ws();
        let (p, r) = if self.peek() == Some(b'^') {
            self.pos += 1;
            let (epos, e) = self.number()?;
            let e = u32::try_from(e).map_err(|_| perr(epos, "exponent too large"))?;
            (base, e)
        } else {
            prime_power(base).ok_or_else(|| perr(npos, format!("{base} is not a prime power")))?
        };
        self.skip_ws();
        let param = if self.peek() == Some(b';') {
            self.pos += 1;
            Some(self.number()?.1)
        } else {
            None
        };
        self.expect(b']')?;
        let spec = PrimeFamilySpec { family, p, r, param };
        spec.validate().map_err(|e| match e {
            Error::InvalidFamily(m) => perr(at, m),
            other => other,
        })?;
        Ok(spec)
    }
}

/// Parses `FAMILY[p^r]` terms joined by `*`; `FAMILY[n]` with `n` a prime
/// power and an optional numerator `FAMILY[p^r;m]` are accepted too.
pub fn parse_spec_terms(text: &str) -> Result<Vec<PrimeFamilySpec>> {
    let mut c = Cursor { s: text.as_bytes(), pos: 0 };
    let mut terms = vec![c.term()?];
    loop {
        c.skip_ws();
        match c.peek() {
            None => break,
            Some(b'*') => {
                c.pos += 1;
                terms.push(c.term()?);
            }
            Some(_) => return Err(perr(c.pos, "expected '*' or end of input")),
        }
    }
    Ok(terms)
}

/// The metric group of a spec string, direct sums folded.
pub fn parse_spec(text: &str) -> Result<MetricGroup> {
    group_of(&parse_spec_terms(text)?)
}

pub(crate) fn group_of(terms: &[PrimeFamilySpec]) -> Result<MetricGroup> {
    let mut g = MetricGroup::trivial();
    for t in terms {
        g = g.direct_sum(&MetricGroup::build_prime(t)?);
    }
    Ok(g)
}

pub(crate) fn render_terms(terms: &[PrimeFamilySpec]) -> String {
    let parts: Vec<String> = terms
        .iter()
        .map(|t| match t.param {
            Some(m) => format!("{}[{}^{};{m}]", t.family.letter(), t.p, t.r),
            None => t.to_string(),
        })
        .collect();
    parts.join("*")
}
