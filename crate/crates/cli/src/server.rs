//! Local HTTP/JSON play service: a human plays the Angel, the configured
//! Devil answers synchronously.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use angel_core::devil::ResolvedDevil;
use angel_core::game::{
    AngelVariant, DevilStrategy, GameState, GameStatus, Square, Trace, TraceEvent,
};
use axum::extract::{Path, Query, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::render::{last_seen, Viewport};
use crate::setup::GameSetup;

struct Session {
    state: GameState,
    devil: Box<dyn DevilStrategy + Send>,
    devil_name: ResolvedDevil,
    events: Vec<TraceEvent>,
}

#[derive(Default)]
pub struct AppState {
    sessions: Mutex<HashMap<u64, Arc<Mutex<Session>>>>,
    next_id: AtomicU64,
}

pub fn router() -> Router {
    Router::new()
        .route("/games", post(create_game))
        .route("/games/{id}", axum::routing::delete(delete_game))
        .route("/games/{id}/state", get(get_state))
        .route("/games/{id}/angel-move", post(angel_move))
        .route("/games/{id}/trace", get(get_trace))
        .with_state(Arc::new(AppState::default()))
}

struct ApiError(StatusCode, String);

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.0, Json(json!({ "error": self.1 }))).into_response()
    }
}

type ApiResult<T> = Result<T, ApiError>;

#[derive(Deserialize)]
struct CreateGame {
    variant: String,
    s: u32,
    devil: String,
    horizon: Option<u64>,
}

#[derive(Deserialize)]
struct AngelMove {
    to: Square,
}

#[derive(Deserialize)]
struct StateQuery {
    viewport: Option<String>,
}

/// Everything a client needs to draw the game.
#[derive(Serialize)]
struct StateView {
    game_id: u64,
    variant: AngelVariant,
    s: u32,
    devil: String,
    #[serde(flatten)]
    status: GameStatus,
    true_position: Square,
    /// The positions the Devil's next decision will be based on.
    revealed: Vec<Square>,
    /// Where the Devil last saw the Angel when it made its latest deletion.
    last_seen: Square,
    angel_moves: usize,
    devil_rounds: u64,
    pending_initial_moves: usize,
    legal_moves: Vec<Square>,
    deleted: Vec<Square>,
    walls: Vec<Square>,
}

fn pending_initial(state: &GameState) -> usize {
    if state.devil_rounds() > 0 {
        0
    } else {
        (state.config().sneak as usize).saturating_sub(state.angel_moves_made())
    }
}

fn view(id: u64, session: &Session, vp: Option<Viewport>) -> StateView {
    let st = &session.state;
    let keep = |sq: &Square| vp.is_none_or(|v| v.contains(*sq));
    let walls = &st.config().preset_deleted;
    StateView {
        game_id: id,
        variant: st.config().variant,
        s: st.config().sneak,
        devil: session.devil_name.to_string(),
        status: st.status(),
        true_position: st.true_position(),
        revealed: st.revealed().to_vec(),
        last_seen: last_seen(st),
        angel_moves: st.angel_moves_made(),
        devil_rounds: st.devil_rounds(),
        pending_initial_moves: pending_initial(st),
        legal_moves: if st.status() == GameStatus::AwaitingAngel {
            st.legal_moves()
        } else {
            Vec::new()
        },
        deleted: st.devil_moves().iter().copied().filter(keep).collect(),
        walls: walls.iter().copied().filter(keep).collect(),
    }
}

impl Session {
    /// Lets the Devil delete until the Angel is due again or the game ends.
    fn devil_turns(&mut self) -> Result<Vec<Square>, String> {
        let mut out = Vec::new();
        while self.state.status() == GameStatus::AwaitingDevil {
            let view = self.state.devil_view().map_err(|e| e.to_string())?;
            let r = view.round();
            let del = self
                .devil
                .next_deletion(&view)
                .map_err(|e| format!("devil failed in round {r}: {e}"))?;
            self.state.apply_devil_delete(del).map_err(|e| e.to_string())?;
            self.events.push(TraceEvent::DevilDelete { r, del });
            out.push(del);
        }
        Ok(out)
    }

    fn trace(&self) -> Trace {
        Trace {
            config: self.state.config().clone(),
            angel: Some(String::from("human")),
            devil: Some(self.devil_name.to_string()),
            events: self.events.clone(),
            outcome: self.state.status(),
            monitors: None,
        }
    }
}

fn session(app: &AppState, id: u64) -> ApiResult<Arc<Mutex<Session>>> {
    app.sessions
        .lock()
        .expect("session table poisoned")
        .get(&id)
        .cloned()
        .ok_or_else(|| ApiError(StatusCode::NOT_FOUND, format!("no game {id}")))
}

fn bad_request(e: impl ToString) -> ApiError {
    ApiError(StatusCode::BAD_REQUEST, e.to_string())
}

async fn create_game(
    State(app): State<Arc<AppState>>,
    Json(req): Json<CreateGame>,
) -> ApiResult<impl IntoResponse> {
    let variant: AngelVariant = req.variant.parse().map_err(bad_request)?;
    let setup = GameSetup::new(variant, req.s, &req.devil, req.horizon).map_err(|e| bad_request(format!("{e:#}")))?;
    let state = GameState::new(setup.config.clone()).map_err(bad_request)?;
    let mut session = Session {
        state,
        devil: setup.devil.build(),
        devil_name: setup.devil,
        events: Vec::new(),
    };
    // With s = 0 the Devil moves first.
    let opening = session
        .devil_turns()
        .map_err(|e| ApiError(StatusCode::INTERNAL_SERVER_ERROR, e))?;
    let id = app.next_id.fetch_add(1, Ordering::Relaxed) + 1;
    let body = json!({
        "game_id": id,
        "pending_initial_moves": pending_initial(&session.state),
        "warnings": setup.warnings,
        "deletions": opening,
        "state": view(id, &session, None),
    });
    app.sessions
        .lock()
        .expect("session table poisoned")
        .insert(id, Arc::new(Mutex::new(session)));
    Ok((StatusCode::CREATED, Json(body)))
}

async fn get_state(
    State(app): State<Arc<AppState>>,
    Path(id): Path<u64>,
    Query(q): Query<StateQuery>,
) -> ApiResult<impl IntoResponse> {
    let vp = q
        .viewport
        .as_deref()
        .map(str::parse::<Viewport>)
        .transpose()
        .map_err(bad_request)?;
    let s = session(&app, id)?;
    let s = s.lock().expect("session poisoned");
    Ok(Json(view(id, &s, vp)))
}

async fn angel_move(
    State(app): State<Arc<AppState>>,
    Path(id): Path<u64>,
    Json(req): Json<AngelMove>,
) -> ApiResult<impl IntoResponse> {
    let s = session(&app, id)?;
    let mut s = s.lock().expect("session poisoned");
    s.state
        .apply_angel_move(req.to)
        .map_err(|e| ApiError(StatusCode::CONFLICT, e.to_string()))?;
    let i = s.state.angel_moves_made();
    s.events.push(TraceEvent::AngelMove { i, to: req.to });
    let deletions = s
        .devil_turns()
        .map_err(|e| ApiError(StatusCode::INTERNAL_SERVER_ERROR, e))?;
    Ok(Json(json!({
        "deletions": deletions,
        "state": view(id, &s, None),
    })))
}

async fn get_trace(
    State(app): State<Arc<AppState>>,
    Path(id): Path<u64>,
) -> ApiResult<impl IntoResponse> {
    let s = session(&app, id)?;
    let text = s.lock().expect("session poisoned").trace().to_jsonl();
    Ok(([(header::CONTENT_TYPE, "application/x-ndjson")], text))
}

async fn delete_game(
    State(app): State<Arc<AppState>>,
    Path(id): Path<u64>,
) -> ApiResult<StatusCode> {
    app.sessions
        .lock()
        .expect("session table poisoned")
        .remove(&id)
        .map(|_| StatusCode::NO_CONTENT)
        .ok_or_else(|| ApiError(StatusCode::NOT_FOUND, format!("no game {id}")))
}
