//! In-process TCP server double speaking the remote prover protocol, backed
//! by the scripted machine. One session per connection.

use std::io::{BufRead, BufReader, Write};
use std::net::{TcpListener, TcpStream};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::thread::JoinHandle;
use std::time::Duration;

use itp::mini::MiniSession;
use itp::wire::{Request, Response, ERR_BAD_REQUEST, ERR_SESSION_CLOSED, ERR_UNKNOWN_CHECKPOINT};
use itp::{ItpSession, Script, SessionError};

pub struct MiniServer {
    addr: String,
    stop: Arc<AtomicBool>,
    handle: Option<JoinHandle<()>>,
}

impl MiniServer {
    /// Bind an ephemeral port and serve sessions; `resolver` maps an init
    /// theorem string to its script.
    pub fn spawn<F>(resolver: F) -> std::io::Result<MiniServer>
    where
        F: Fn(&str) -> Option<Script> + Send + Sync + 'static,
    {
        let listener = TcpListener::bind("127.0.0.1:0")?;
        let addr = listener.local_addr()?.to_string();
        let stop = Arc::new(AtomicBool::new(false));
        let stop2 = Arc::clone(&stop);
        let resolver = Arc::new(resolver);
        let handle = std::thread::spawn(move || {
            for conn in listener.incoming() {
                if stop2.load(Ordering::SeqCst) {
                    break;
                }
                let Ok(stream) = conn else { break };
                let resolver = Arc::clone(&resolver);
                std::thread::spawn(move || serve_connection(stream, &*resolver));
            }
        });
        Ok(MiniServer { addr, stop, handle: Some(handle) })
    }

    pub fn addr(&self) -> &str {
        &self.addr
    }
}

impl Drop for MiniServer {
    fn drop(&mut self) {
        self.stop.store(true, Ordering::SeqCst);
        // Nudge the accept loop.
        let _ = TcpStream::connect(&self.addr);
        if let Some(h) = self.handle.take() {
            let _ = h.join();
        }
    }
}

fn serve_connection<F>(stream: TcpStream, resolver: &F)
where
    F: Fn(&str) -> Option<Script>,
{
    stream.set_read_timeout(Some(Duration::from_secs(300))).ok();
    let mut writer = match stream.try_clone() {
        Ok(w) => w,
        Err(_) => return,
    };
    let reader = BufReader::new(stream);
    let mut session: Option<MiniSession> = None;
    for line in reader.lines() {
        let Ok(line) = line else { break };
        if line.trim().is_empty() {
            continue;
        }
        let resp = match serde_json::from_str::<Request>(&line) {
            Err(_) => Response::fail(ERR_BAD_REQUEST),
            Ok(Request::Init { theorem }) => match resolver(&theorem) {
                Some(script) => match MiniSession::new(script, &theorem) {
                    Ok(sess) => {
                        let (state, ck) = sess.initial();
                        session = Some(sess);
                        Response::ok_state(state, Some(ck))
                    }
                    Err(_) => Response::fail(ERR_BAD_REQUEST),
                },
                None => Response::fail(ERR_BAD_REQUEST),
            },
            Ok(Request::Apply { from, step, timeout_ms }) => match session.as_mut() {
                None => Response::fail(ERR_BAD_REQUEST),
                Some(sess) => {
                    match sess.apply_from(from, &step, Some(Duration::from_millis(timeout_ms))) {
                        Ok(r) => Response::ok_state(r.state, r.checkpoint),
                        Err(e) => fail_of(e),
                    }
                }
            },
            Ok(Request::State { checkpoint }) => match session.as_ref() {
                None => Response::fail(ERR_BAD_REQUEST),
                Some(sess) => match sess.state_at(checkpoint) {
                    Ok(s) => Response::ok_state(s, Some(checkpoint)),
                    Err(e) => fail_of(e),
                },
            },
            Ok(Request::Close) => {
                if let Some(mut sess) = session.take() {
                    sess.close();
                }
                let ok = Response { ok: true, state: None, checkpoint: None, err: None };
                let _ = write_line(&mut writer, &ok);
                break;
            }
        };
        if write_line(&mut writer, &resp).is_err() {
            break;
        }
    }
}

fn fail_of(e: SessionError) -> Response {
    match e {
        SessionError::Closed => Response::fail(ERR_SESSION_CLOSED),
        SessionError::UnknownCheckpoint(_) => Response::fail(ERR_UNKNOWN_CHECKPOINT),
        _ => Response::fail(ERR_BAD_REQUEST),
    }
}

fn write_line(w: &mut TcpStream, resp: &Response) -> std::io::Result<()> {
    let mut buf = serde_json::to_vec(resp)?;
    buf.push(b'\n');
    w.write_all(&buf)
}
