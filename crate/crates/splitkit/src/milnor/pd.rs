//! Text form `PD[X(1,4,2,5), X[5,2,6,3], ...]`.

use super::{LinkDiagram, MilnorError, Result};

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

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(MilnorError::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn expect(&mut self, options: &[u8]) -> Result<u8> {
        match self.peek() {
            Some(c) if options.contains(&c) => {
                self.pos += 1;
                Ok(c)
            }
            Some(c) => self.err(format!("unexpected '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }

    fn number(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an arc label");
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| MilnorError::Syntax { pos: start, msg: "arc label too large".into() })
    }
}

fn closing(open: u8) -> u8 {
    if open == b'(' {
        b')'
    } else {
        b']'
    }
}

/// Parse the crossings of a PD code. Brackets and parentheses are
/// interchangeable and the outer `PD[...]` is optional.
pub fn parse_crossings(text: &str) -> Result<Vec<[u32; 4]>> {
    let mut cur = Cursor { s: text.as_bytes(), pos: 0 };
    let mut outer = None;
    if cur.peek() == Some(b'P') {
        cur.pos += 1;
        cur.expect(b"D")?;
        outer = Some(closing(cur.expect(b"[(")?));
    }
    let mut out = Vec::new();
    loop {
        match cur.peek() {
            Some(b'X') => {
                cur.pos += 1;
                let close = closing(cur.expect(b"[(")?);
                let mut x = [0u32; 4];
                for (i, slot) in x.iter_mut().enumerate() {
                    if i > 0 {
                        cur.expect(b",")?;
                    }
                    *slot = cur.number()?;
                }
                cur.expect(&[close])?;
                out.push(x);
                match cur.peek() {
                    Some(b',') => cur.pos += 1,
                    _ => {
                        if let Some(c) = outer {
                            cur.expect(&[c])?;
                            outer = None;
                        }
                        break;
                    }
                }
            }
            Some(c) if Some(c) == outer => {
                cur.pos += 1;
                outer = None;
                break;
            }
            None if outer.is_none() => break,
            _ => return cur.err("expected a crossing X[a,b,c,d]"),
        }
    }
    if outer.is_some() {
        return cur.err("unclosed PD[");
    }
    if cur.peek().is_some() {
        return cur.err("trailing input");
    }
    Ok(out)
}

/// Parse and validate a PD code, reading components off the connectivity.
pub fn parse_pd(text: &str) -> Result<LinkDiagram> {
    LinkDiagram::new(parse_crossings(text)?, None, None)
}
