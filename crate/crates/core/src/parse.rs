//! Text grammars for command-line inputs.
//!
//! - group: `3,3` (orders of the cyclic factors); `1` is the trivial group.
//! - sequence: `(1,0)^2 (0,1)`; `1` or the empty string is the empty sequence.
//! - module: `p=3; U=[(1,0)]; V=[1:2]` for an `H_p`-module, or
//!   `p=3; r=2; X=all` / `p=2; r=3; X=[(1,0,0),(0,1,1)]` for a diagonal
//!   `C_p^r`-module.
//!
//! Whitespace is insignificant. Errors carry the byte offset of the problem.

use std::fmt;

use thiserror::Error;

use crate::abelian::{AbelianGroup, Sequence};
use crate::action::{AbelianSpec, ModuleDescriptor, ModuleSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub input: String,
    pub pos: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(input: &str, pos: usize, message: impl Into<String>) -> Self {
        ParseError { input: input.to_string(), pos, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at column {} of {:?}", self.message, self.pos + 1, self.input)
    }
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.src, self.pos, msg)
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{c}'")))
        }
    }

    fn number(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let digits = self.src[start..].chars().take_while(char::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.err("expected a number"));
        }
        self.pos += digits;
        self.src[start..self.pos]
            .parse()
            .map_err(|_| ParseError::new(self.src, start, "number out of range"))
    }

    fn word(&mut self) -> Result<&'a str, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let len = self.src[start..].chars().take_while(char::is_ascii_alphabetic).count();
        if len == 0 {
            return Err(self.err("expected a key"));
        }
        self.pos += len;
        Ok(&self.src[start..self.pos])
    }

    /// `(n, n, ...)`
    fn tuple(&mut self) -> Result<Vec<u32>, ParseError> {
        self.expect('(')?;
        let mut out = Vec::new();
        if self.eat(')') {
            return Ok(out);
        }
        loop {
            out.push(self.number()?);
            if self.eat(')') {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }

    /// `[item, item, ...]`
    fn list<T>(&mut self, mut item: impl FnMut(&mut Self) -> Result<T, ParseError>) -> Result<Vec<T>, ParseError> {
        self.expect('[')?;
        let mut out = Vec::new();
        if self.eat(']') {
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            if self.eat(']') {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }
}

/// `3,3` -> `C_3 x C_3`.
pub fn group(s: &str) -> Result<AbelianGroup, ParseError> {
    let mut c = Cursor::new(s);
    let mut orders = vec![c.number()?];
    while c.eat(',') {
        orders.push(c.number()?);
    }
    if !c.at_end() {
        return Err(c.err("unexpected trailing input"));
    }
    AbelianGroup::new(&orders).map_err(|e| ParseError::new(s, 0, e.to_string()))
}

/// `(1,0)^2 (0,1)` over `group`. Over a cyclic group bare residues such as
/// `1^5 2^2` are accepted too. The empty sequence is `""` or `1`, matching its
/// printed form, so a single element 1 must be written `(1)`.
pub fn sequence(group: &AbelianGroup, s: &str) -> Result<Sequence, ParseError> {
    let mut c = Cursor::new(s);
    let mut seq = Sequence::empty(group);
    if s.trim() == "1" {
        return Ok(seq);
    }
    while !c.at_end() {
        let start = c.pos;
        let coords = if group.rank() == 1 && c.peek().is_some_and(|ch| ch.is_ascii_digit()) {
            vec![c.number()?]
        } else {
            c.tuple()?
        };
        let elem = group.element(&coords).map_err(|e| ParseError::new(s, start, e.to_string()))?;
        let times = if c.eat('^') { c.number()? } else { 1 };
        for _ in 0..times {
            seq.push(&elem);
        }
    }
    Ok(seq)
}

/// A module descriptor; see the module documentation for the grammar.
pub fn module(s: &str) -> Result<ModuleDescriptor, ParseError> {
    let mut c = Cursor::new(s);
    let mut p = None;
    let mut rank = None;
    let mut u = None;
    let mut v = None;
    let mut x: Option<Option<Vec<Vec<u32>>>> = None;
    loop {
        let key_pos = {
            c.skip_ws();
            c.pos
        };
        let key = c.word()?;
        c.expect('=')?;
        let dup = || ParseError::new(s, key_pos, format!("duplicate key {key}"));
        match key {
            "p" => {
                if p.replace(c.number()?).is_some() {
                    return Err(dup());
                }
            }
            "r" => {
                if rank.replace(c.number()? as usize).is_some() {
                    return Err(dup());
                }
            }
            "U" => {
                let chars = c.list(|c| {
                    let at = c.pos;
                    match c.tuple()?[..] {
                        [a, b] => Ok((a, b)),
                        _ => Err(ParseError::new(c.src, at, "a U-character is a pair (alpha,beta)")),
                    }
                })?;
                if u.replace(chars).is_some() {
                    return Err(dup());
                }
            }
            "V" => {
                let blocks = c.list(|c| {
                    let i = c.number()?;
                    c.expect(':')?;
                    Ok((i, c.number()?))
                })?;
                if v.replace((key_pos, blocks)).is_some() {
                    return Err(dup());
                }
            }
            "X" => {
                let chars = if c.peek() == Some('[') {
                    Some(c.list(Cursor::tuple)?)
                } else {
                    let at = c.pos;
                    match c.word()? {
                        "all" => None,
                        _ => return Err(ParseError::new(s, at, "expected 'all' or a list of characters")),
                    }
                };
                if x.replace(chars).is_some() {
                    return Err(dup());
                }
            }
            _ => return Err(ParseError::new(s, key_pos, format!("unknown key {key}"))),
        }
        if c.at_end() {
            break;
        }
        c.expect(';')?;
        if c.at_end() {
            break;
        }
    }
    let p = p.ok_or_else(|| ParseError::new(s, 0, "missing p=..."))?;
    let invalid = |e: crate::action::ActionError| ParseError::new(s, 0, e.to_string());
    if rank.is_some() || x.is_some() {
        if u.is_some() || v.is_some() {
            return Err(ParseError::new(s, 0, "U/V and r/X keys cannot be mixed"));
        }
        let rank = rank.ok_or_else(|| ParseError::new(s, 0, "missing r=..."))?;
        let spec = match x.ok_or_else(|| ParseError::new(s, 0, "missing X=..."))? {
            None => AbelianSpec::all_nontrivial(p, rank),
            Some(chars) => AbelianSpec::new(p, rank, chars),
        }
        .map_err(invalid)?;
        return Ok(ModuleDescriptor::Abelian(spec));
    }
    let mut n = vec![0u32; p.saturating_sub(1) as usize];
    if let Some((at, blocks)) = v {
        for (i, k) in blocks {
            if i == 0 || i >= p {
                return Err(ParseError::new(s, at, format!("block index {i} must lie in 1..{}", p.saturating_sub(1))));
            }
            n[(i - 1) as usize] += k;
        }
    }
    let spec = ModuleSpec::new(p, u.unwrap_or_default(), n).map_err(invalid)?;
    Ok(ModuleDescriptor::Heisenberg(spec))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn groups() {
        let g = group("3,3").unwrap();
        assert_eq!(g.orders(), &[3, 3]);
        assert_eq!(group(" 2 , 4 ").unwrap().to_string(), "2,4");
        assert_eq!(group("1").unwrap().size(), 1);
        let e = group("3,,3").unwrap_err();
        assert_eq!(e.pos, 2);
        assert!(group("3;3").is_err());
        assert!(group("0").is_err());
    }

    #[test]
    fn sequences() {
        let g = group("3,3").unwrap();
        let s = sequence(&g, "(1,0)^2 (0,1)").unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.to_string(), "(0,1) (1,0)^2");
        assert_eq!(sequence(&g, &s.to_string()).unwrap(), s);
        assert!(sequence(&g, "1").unwrap().is_empty());
        assert!(sequence(&g, "").unwrap().is_empty());
        let e = sequence(&g, "(1,0) (3,0)").unwrap_err();
        assert_eq!(e.pos, 6);
        assert!(sequence(&g, "(1,0,0)").is_err());
        assert!(sequence(&g, "(1,0").is_err());
        let c3 = group("3").unwrap();
        let t = sequence(&c3, "1^5 2^2").unwrap();
        assert_eq!(t, sequence(&c3, "(1)^5 (2)^2").unwrap());
        assert!(t.sigma().is_zero());
    }

    #[test]
    fn modules() {
        let m = module("p=3;V=[1:1]").unwrap();
        assert_eq!(m.to_string(), "p=3;V=[1:1]");
        let m = module(" p = 3 ; U = [ (1,0) ] ; V = [1:2] ").unwrap();
        assert_eq!(m.to_string(), "p=3;U=[(1,0)];V=[1:2]");
        assert_eq!(module(&m.to_string()).unwrap(), m);
        let a = module("p=3;r=2;X=all").unwrap();
        assert_eq!(a.to_string(), "p=3;r=2;X=all");
        let b = module("p=2;r=3;X=[(1,0,0),(0,1,1)]").unwrap();
        assert_eq!(module(&b.to_string()).unwrap(), b);
        assert!(module("p=4;V=[1:1]").is_err());
        assert_eq!(module("p=3;V=[3:1]").unwrap_err().pos, 4);
        assert_eq!(module("p=3;W=[1:1]").unwrap_err().pos, 4);
        assert!(module("p=3;V=[1:1];r=2").is_err());
        assert!(module("p=3;V=[]").is_err());
    }
}
