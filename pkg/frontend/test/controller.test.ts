import { describe, expect, it } from 'vitest';

import { MatchController, type MatchSetup } from '../src/controller.js';
import { DEFAULT_PARAMS, type ClientMessage, type StateMessage } from '../src/protocol.js';
import { makeState } from './fixtures.js';

function setup(overrides: Partial<MatchSetup> = {}): MatchSetup {
  return {
    whiteSeat: 'human',
    redSeat: 'agent',
    whiteAgent: '',
    redAgent: 'minimax',
    whiteParams: '',
    redParams: 'depth=2',
    params: { ...DEFAULT_PARAMS },
    ...overrides,
  };
}

function controllerWithLog() {
  const sent: ClientMessage[] = [];
  const controller = new MatchController((message) => sent.push(message));
  return { controller, sent };
}

describe('starting a match', () => {
  it('sends NewMatch for a valid form', () => {
    const { controller, sent } = controllerWithLog();
    expect(controller.start(setup())).toEqual([]);
    expect(sent).toHaveLength(1);
    expect(sent[0]).toMatchObject({ type: 'NewMatch', white: 'human', red: 'minimax' });
  });

  it('client-side validation blocks bad params without sending', () => {
    const { controller, sent } = controllerWithLog();
    const problems = controller.start(setup({ params: { ...DEFAULT_PARAMS, rows: 0 } }));
    expect(problems).not.toEqual([]);
    expect(sent).toHaveLength(0);
  });
});

describe('move gating', () => {
  it('sends a legal click as HumanMove', () => {
    const { controller, sent } = controllerWithLog();
    controller.start(setup());
    controller.receive(makeState());
    expect(controller.clickColumn(3)).toBe(true);
    expect(sent[1]).toEqual({ type: 'HumanMove', column: 3, shape: 'round' });
  });

  it('ignores clicks when it is the agent turn', () => {
    const { controller, sent } = controllerWithLog();
    controller.start(setup());
    controller.receive(makeState({ to_move: 'Red' }));
    expect(controller.clickColumn(3)).toBe(false);
    expect(sent).toHaveLength(1); // only the NewMatch
  });

  it('ignores clicks on columns missing from the legal list', () => {
    const { controller, sent } = controllerWithLog();
    controller.start(setup());
    controller.receive(makeState({ legal_moves: ['1r', '1s'] }));
    expect(controller.clickColumn(0)).toBe(false);
    expect(sent).toHaveLength(1);
  });

  it('ignores everything once the game is over', () => {
    const { controller, sent } = controllerWithLog();
    controller.start(setup());
    controller.receive(
      makeState({
        legal_moves: [],
        outcome: { status: 'Win', winner: 'Red', line: null, reason: 'LineWin' },
      }),
    );
    expect(controller.clickColumn(0)).toBe(false);
    expect(controller.resign()).toBe(false);
    expect(sent).toHaveLength(1);
  });

  it('auto-switches to a selectable shape when the current one runs out', () => {
    const { controller } = controllerWithLog();
    controller.start(setup());
    controller.receive(makeState({ legal_moves: ['2s', '4s'] }));
    expect(controller.selectedShape).toBe('square');
  });
});

describe('scripted click fuzz', () => {
  it('never emits an illegal HumanMove across 50 random clicks', () => {
    // Deterministic LCG so failures replay.
    let seed = 0x5eed;
    const rand = (bound: number) => {
      seed = (seed * 1103515245 + 12345) & 0x7fffffff;
      return seed % bound;
    };
    const states: StateMessage[] = [
      makeState(),
      makeState({ legal_moves: ['0r', '3r', '3s'] }),
      makeState({ to_move: 'Red', legal_moves: ['1r', '1s'] }),
      makeState({ legal_moves: ['5s', '6s'] }),
      makeState({ legal_moves: [] , outcome: { status: 'Draw', winner: null, line: null, reason: 'Draw' } }),
      makeState({ legal_moves: ['0r', '0s', '1r', '1s', '2r'] }),
      makeState({
        legal_moves: [],
        outcome: { status: 'Win', winner: 'White', line: [[0, 0], [1, 1], [2, 2], [3, 3]], reason: 'LineWin' },
      }),
    ];
    const sent: ClientMessage[] = [];
    const controller = new MatchController((message) => sent.push(message));
    controller.start(setup());
    let lastLegal = new Set<string>();
    let clicks = 0;
    let moved = 0;
    while (clicks < 50) {
      const state = states[rand(states.length)]!;
      controller.receive(state);
      lastLegal = new Set(state.legal_moves);
      const before = sent.length;
      controller.selectShape(rand(2) === 0 ? 'round' : 'square');
      controller.clickColumn(rand(9)); // includes out-of-range columns
      clicks++;
      for (const message of sent.slice(before)) {
        expect(message.type).toBe('HumanMove');
        const move = message as { column: number; shape: 'round' | 'square' };
        const notation = `${move.column}${move.shape === 'round' ? 'r' : 's'}`;
        expect(lastLegal.has(notation)).toBe(true);
        expect(state.to_move).toBe('White');
        expect(state.outcome.status).toBe('InProgress');
        moved++;
      }
    }
    expect(clicks).toBe(50);
    expect(moved).toBeGreaterThan(0); // the fuzz actually exercised sends
  });
});
