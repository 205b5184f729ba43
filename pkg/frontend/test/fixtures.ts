import { DEFAULT_PARAMS, type StateMessage } from '../src/protocol.js';

export function makeState(overrides: Partial<StateMessage> = {}): StateMessage {
  return {
    type: 'State',
    board: ['.......', '.......', '.......', '.......', '.......', '.......'].join('\n'),
    to_move: 'White',
    legal_moves: ['0r', '0s', '1r', '1s', '2r', '2s', '3r', '3s', '4r', '4s', '5r', '5s', '6r', '6s'],
    last_move: null,
    outcome: { status: 'InProgress', winner: null, line: null, reason: null },
    reserves: { White: { round: 10, square: 11 }, Red: { round: 10, square: 11 } },
    params: { ...DEFAULT_PARAMS },
    ...overrides,
  };
}
