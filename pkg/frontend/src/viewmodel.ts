/**
 * Pure view-model layer: everything rendered is derived from the latest
 * State frame, never mutated locally.
 */

import type { ParamsMessage, StateMessage } from './protocol.js';

/** Cell state mirrors the board text: '.' empty, w/W/r/R colored pieces. */
export type Cell = '.' | 'w' | 'W' | 'r' | 'R';

export type Shape = 'round' | 'square';

export interface BoardViewModel {
  /** grid[row][col], row 0 at the bottom. */
  grid: Cell[][];
  rows: number;
  cols: number;
  toMove: 'White' | 'Red';
  legalMoves: Set<string>;
  reserves: { White: { round: number; square: number }; Red: { round: number; square: number } };
  gameOver: boolean;
  outcomeText: string;
  /** "row,col" keys of the winning line, empty unless someone won. */
  winningCells: Set<string>;
  lastMove: string | null;
}

/** Parse board text (top row first) into a bottom-origin grid. */
export function parseBoard(text: string): Cell[][] {
  const lines = text.split('\n');
  const grid: Cell[][] = [];
  for (let i = lines.length - 1; i >= 0; i--) {
    const line = lines[i]!;
    const row: Cell[] = [];
    for (const char of line) {
      if (char !== '.' && char !== 'w' && char !== 'W' && char !== 'r' && char !== 'R') {
        throw new Error(`unknown cell character '${char}'`);
      }
      row.push(char);
    }
    grid.push(row);
  }
  return grid;
}

export function moveText(column: number, shape: Shape): string {
  return `${column}${shape === 'round' ? 'r' : 's'}`;
}

function outcomeText(state: StateMessage): string {
  const outcome = state.outcome;
  if (outcome.status === 'InProgress') return `${state.to_move} to move`;
  if (outcome.status === 'Draw') return 'Draw';
  const how = outcome.reason && outcome.reason !== 'LineWin' ? ` (${outcome.reason})` : '';
  return `${outcome.winner} wins${how}`;
}

export function deriveViewModel(state: StateMessage): BoardViewModel {
  const grid = parseBoard(state.board);
  const winningCells = new Set<string>();
  if (state.outcome.line) {
    for (const [row, col] of state.outcome.line) winningCells.add(`${row},${col}`);
  }
  return {
    grid,
    rows: grid.length,
    cols: grid[0]?.length ?? 0,
    toMove: state.to_move,
    legalMoves: new Set(state.legal_moves),
    reserves: {
      White: { ...state.reserves.White },
      Red: { ...state.reserves.Red },
    },
    gameOver: state.outcome.status !== 'InProgress',
    outcomeText: outcomeText(state),
    winningCells,
    lastMove: state.last_move,
  };
}

/** Columns playable with the given shape, straight from the legal list. */
export function legalColumns(vm: BoardViewModel, shape: Shape): Set<number> {
  const suffix = shape === 'round' ? 'r' : 's';
  const columns = new Set<number>();
  for (const move of vm.legalMoves) {
    if (move.endsWith(suffix)) columns.add(parseInt(move.slice(0, -1), 10));
  }
  return columns;
}

/** A shape with zero reserve (or no legal column) is unselectable. */
export function shapeSelectable(vm: BoardViewModel, shape: Shape): boolean {
  return legalColumns(vm, shape).size > 0;
}

/** Client-side validation of the setup form, mirroring the rule invariants. */
export function validateParams(params: ParamsMessage): string[] {
  const problems: string[] = [];
  if (params.rows < 1) problems.push('rows must be at least 1');
  if (params.cols < 1) problems.push('columns must be at least 1');
  if (params.win < 1) problems.push('win length must be at least 1');
  if (params.squares < 0) problems.push('squares per player cannot be negative');
  if (params.rounds < 0) problems.push('rounds per player cannot be negative');
  if (params.squares + params.rounds < 1) problems.push('each player needs at least one piece');
  if (params.time_limit_ms <= 0) problems.push('time limit must be positive');
  return problems;
}

/** Reserve bookkeeping check: initial supply minus pieces on the grid. */
export function reservesConsistent(vm: BoardViewModel, params: ParamsMessage): boolean {
  const counts = { w: 0, W: 0, r: 0, R: 0, '.': 0 };
  for (const row of vm.grid) for (const cell of row) counts[cell]++;
  return (
    vm.reserves.White.round === params.rounds - counts.w &&
    vm.reserves.White.square === params.squares - counts.W &&
    vm.reserves.Red.round === params.rounds - counts.r &&
    vm.reserves.Red.square === params.squares - counts.R
  );
}
