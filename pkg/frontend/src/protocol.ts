/** Wire protocol shared with the match service: JSON frames over /ws. */

export interface ParamsMessage {
  rows: number;
  cols: number;
  win: number;
  squares: number;
  rounds: number;
  time_limit_ms: number;
}

export interface NewMatchMessage {
  type: 'NewMatch';
  white: string;
  red: string;
  white_params: string;
  red_params: string;
  params: ParamsMessage;
}

export interface HumanMoveMessage {
  type: 'HumanMove';
  column: number;
  shape: 'round' | 'square';
}

export interface ResignMessage {
  type: 'Resign';
}

export type ClientMessage = NewMatchMessage | HumanMoveMessage | ResignMessage;

export interface OutcomeMessage {
  status: 'InProgress' | 'Draw' | 'Win';
  winner: 'White' | 'Red' | null;
  line: [number, number][] | null;
  reason: string | null;
}

export interface ReservesMessage {
  round: number;
  square: number;
}

export interface StateMessage {
  type: 'State';
  board: string;
  to_move: 'White' | 'Red';
  legal_moves: string[];
  last_move: string | null;
  outcome: OutcomeMessage;
  reserves: { White: ReservesMessage; Red: ReservesMessage };
  params: ParamsMessage;
}

export interface ThinkingMessage {
  type: 'Thinking';
  agent: string;
  info: string;
}

export interface ErrorMessage {
  type: 'Error';
  reason: string;
}

export type ServerMessage = StateMessage | ThinkingMessage | ErrorMessage;

export const DEFAULT_PARAMS: ParamsMessage = {
  rows: 6,
  cols: 7,
  win: 4,
  squares: 11,
  rounds: 10,
  time_limit_ms: 200,
};
