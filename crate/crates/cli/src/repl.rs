use std::io::{self, BufRead, Write};

use num_bigint::BigUint;

use crate::{describe_error, eval_command, probable_prime_note, CliError, Session};

enum Directive {
    Continue,
    Quit,
}

fn directive(line: &str, session: &mut Session) -> Result<Directive, String> {
    let words: Vec<&str> = line.split_whitespace().collect();
    match words.as_slice() {
        [":quit"] | [":q"] => Ok(Directive::Quit),
        [":set", "p", value] => {
            let base: BigUint = value
                .parse()
                .map_err(|_| format!("not an integer: {value}"))?;
            session.ctx.set_base(base).map_err(|e| e.to_string())?;
            Ok(Directive::Continue)
        }
        [":set", "N", value] => {
            let n: usize = value
                .parse()
                .map_err(|_| format!("not a precision: {value}"))?;
            session.ctx.set_precision(n).map_err(|e| e.to_string())?;
            Ok(Directive::Continue)
        }
        [":set", "marker", "on"] => {
            session.ctx.marker = true;
            Ok(Directive::Continue)
        }
        [":set", "marker", "off"] => {
            session.ctx.marker = false;
            Ok(Directive::Continue)
        }
        [":set", ..] => Err("usage: :set p <int> | :set N <int> | :set marker on|off".into()),
        _ => Err(format!(
            "unknown directive {}",
            words.first().unwrap_or(&":")
        )),
    }
}

/// Line-oriented loop: expressions print their value, `:` lines change the
/// session. Evaluation errors are reported on `err` and the loop goes on;
/// only I/O failures end it early.
pub fn run_repl(
    input: impl BufRead,
    out: &mut impl Write,
    err: &mut impl Write,
    session: &mut Session,
    prompt: bool,
) -> io::Result<()> {
    let mut lines = input.lines();
    loop {
        if prompt {
            write!(
                out,
                "p={} N={}> ",
                session.ctx.base(),
                session.ctx.precision()
            )?;
            out.flush()?;
        }
        let Some(line) = lines.next() else {
            return Ok(());
        };
        let line = line?;
        let text = line.trim();
        if text.is_empty() {
            continue;
        }
        if text.starts_with(':') {
            match directive(text, session) {
                Ok(Directive::Quit) => return Ok(()),
                Ok(Directive::Continue) => {
                    if let Some(note) = probable_prime_note(&session.ctx) {
                        writeln!(err, "{note}")?;
                    }
                }
                Err(message) => writeln!(err, "error: {message}")?,
            }
            continue;
        }
        match eval_command(session, text) {
            Ok(shown) => writeln!(out, "{shown}")?,
            Err(e @ CliError::Core(_)) => writeln!(err, "{}", describe_error(&e, Some(text)))?,
            Err(e) => return Err(io::Error::other(e.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(script: &str, base: u32, precision: usize) -> (String, String) {
        let mut session = Session::new(base.into(), precision, false, false).unwrap();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        run_repl(script.as_bytes(), &mut out, &mut err, &mut session, false).unwrap();
        (
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn directives_persist() {
        let (out, err) = run(":set p 10\n-58\n:set p 7\nval(343/2)\n", 5, 6);
        assert_eq!(out, "...999942\n3\n");
        assert_eq!(err, "");
        let (out, _) = run(
            ":set N 4\n1/3\n:set marker on\n1/3\n:set marker off\n1/3\n",
            10,
            12,
        );
        assert_eq!(out, "...6667\n...6667 + O(10^4)\n...6667\n");
    }

    #[test]
    fn errors_do_not_stop_the_loop() {
        let (out, err) = run(
            ":foo\nnorm(12\n1/(2+3)\n:set p 1\n:set N x\n2 + 2\n:quit\n7\n",
            10,
            4,
        );
        assert_eq!(out, "...0004\n");
        let lines: Vec<&str> = err.lines().collect();
        assert_eq!(lines[0], "error: unknown directive :foo");
        assert!(lines[1].starts_with("error: syntax error at offset 7"));
        assert_eq!(lines[3], "         ^");
        assert!(lines[4].starts_with("error: not invertible"));
        assert!(lines[5].starts_with("error: base must be"));
        assert!(lines[6].starts_with("error: not a precision"));
    }

    #[test]
    fn prompt_only_when_asked() {
        let mut session = Session::new(10u32.into(), 4, false, false).unwrap();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        run_repl("1\n".as_bytes(), &mut out, &mut err, &mut session, true).unwrap();
        assert_eq!(
            String::from_utf8(out).unwrap(),
            "p=10 N=4> ...0001\np=10 N=4> "
        );
    }
}
