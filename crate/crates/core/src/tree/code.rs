//! Canonical text codes.
//!
//! ```text
//! code    := kindtag ":" node
//! kindtag := "d" digits | "b" digits
//! d-node  := "(" slot{d} ")"      slot := "_" | d-node
//! b-node  := "(" b-node* ")"      at most d children
//! ```

use super::{BracketTree, DaryTree, Tree, NIL};
use crate::{Error, Result};

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected {:?}", b as char))
        }
    }

    fn number(&mut self) -> Result<usize> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        match text.parse::<usize>() {
            Ok(n) if n >= 2 => Ok(n),
            _ => Err(Error::Parse {
                pos: start,
                msg: "degree bound must be an integer >= 2".into(),
            }),
        }
    }

    fn dary_node(&mut self, d: usize, arena: &mut Vec<u32>) -> Result<u32> {
        self.expect(b'(')?;
        let id = (arena.len() / d) as u32;
        arena.extend(std::iter::repeat_n(NIL, d));
        for s in 0..d {
            match self.peek() {
                Some(b'_') => self.pos += 1,
                Some(b'(') => {
                    let c = self.dary_node(d, arena)?;
                    arena[id as usize * d + s] = c;
                }
                _ => return self.err("expected '_' or '('"),
            }
        }
        self.expect(b')')?;
        Ok(id)
    }

    fn bracket_node(&mut self, d: usize, arena: &mut Vec<Vec<u32>>) -> Result<u32> {
        self.expect(b'(')?;
        let id = arena.len() as u32;
        arena.push(Vec::new());
        while self.peek() == Some(b'(') {
            if arena[id as usize].len() == d {
                return self.err(format!("more than {d} children"));
            }
            let c = self.bracket_node(d, arena)?;
            arena[id as usize].push(c);
        }
        self.expect(b')')?;
        Ok(id)
    }
}

/// Parses a canonical code into a tree of the tagged kind.
pub fn decode(code: &str) -> Result<Tree> {
    let mut p = Parser {
        bytes: code.as_bytes(),
        pos: 0,
    };
    let tag = match p.peek() {
        Some(t @ (b'd' | b'b')) => t,
        _ => return p.err("expected kind tag 'd' or 'b'"),
    };
    p.pos += 1;
    let d = p.number()?;
    p.expect(b':')?;
    let tree = if tag == b'd' {
        let mut arena = Vec::new();
        p.dary_node(d, &mut arena)?;
        Tree::Dary(DaryTree::from_arena(d, &arena))
    } else {
        let mut arena = Vec::new();
        p.bracket_node(d, &mut arena)?;
        Tree::Bracket(BracketTree::from_arena(d, &arena))
    };
    if p.pos != p.bytes.len() {
        return p.err("trailing characters");
    }
    Ok(tree)
}
