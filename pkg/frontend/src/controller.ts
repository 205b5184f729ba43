/**
 * Socket-agnostic match controller: holds the latest view model and gates
 * every outgoing HumanMove against it. The DOM layer and the tests both
 * drive this class; the send function is injected.
 */

import type { ClientMessage, ParamsMessage, ServerMessage, StateMessage } from './protocol.js';
import {
  type BoardViewModel,
  type Shape,
  deriveViewModel,
  moveText,
  shapeSelectable,
  validateParams,
} from './viewmodel.js';

export interface MatchSetup {
  whiteSeat: 'human' | 'agent';
  redSeat: 'human' | 'agent';
  whiteAgent: string;
  redAgent: string;
  whiteParams: string;
  redParams: string;
  params: ParamsMessage;
}

export interface ControllerEvents {
  onState?: (vm: BoardViewModel) => void;
  onThinking?: (agent: string, info: string) => void;
  onError?: (reason: string) => void;
}

export class MatchController {
  vm: BoardViewModel | null = null;
  selectedShape: Shape = 'round';
  private humanSeats = new Set<'White' | 'Red'>();
  private send: (message: ClientMessage) => void;
  private events: ControllerEvents;

  constructor(send: (message: ClientMessage) => void, events: ControllerEvents = {}) {
    this.send = send;
    this.events = events;
  }

  /** Validate the form and send NewMatch; returns problems instead when invalid. */
  start(setup: MatchSetup): string[] {
    const problems = validateParams(setup.params);
    if (setup.whiteSeat === 'agent' && !setup.whiteAgent) problems.push('pick a White agent');
    if (setup.redSeat === 'agent' && !setup.redAgent) problems.push('pick a Red agent');
    if (problems.length > 0) return problems;
    this.humanSeats = new Set();
    if (setup.whiteSeat === 'human') this.humanSeats.add('White');
    if (setup.redSeat === 'human') this.humanSeats.add('Red');
    this.vm = null;
    this.send({
      type: 'NewMatch',
      white: setup.whiteSeat === 'human' ? 'human' : setup.whiteAgent,
      red: setup.redSeat === 'human' ? 'human' : setup.redAgent,
      white_params: setup.whiteParams,
      red_params: setup.redParams,
      params: setup.params,
    });
    return [];
  }

  receive(message: ServerMessage): void {
    if (message.type === 'State') {
      this.vm = deriveViewModel(message as StateMessage);
      // Keep a selectable shape selected whenever possible.
      if (!shapeSelectable(this.vm, this.selectedShape)) {
        const other: Shape = this.selectedShape === 'round' ? 'square' : 'round';
        if (shapeSelectable(this.vm, other)) this.selectedShape = other;
      }
      this.events.onState?.(this.vm);
    } else if (message.type === 'Thinking') {
      this.events.onThinking?.(message.agent, message.info);
    } else {
      this.events.onError?.(message.reason);
    }
  }

  get humanTurn(): boolean {
    return this.vm !== null && !this.vm.gameOver && this.humanSeats.has(this.vm.toMove);
  }

  selectShape(shape: Shape): void {
    this.selectedShape = shape;
  }

  /**
   * Column click: emits HumanMove only when it is a human's turn and the
   * (column, shape) pair is in the last State's legal list. Returns whether
   * a move was sent.
   */
  clickColumn(column: number): boolean {
    if (!this.humanTurn || this.vm === null) return false;
    const move = moveText(column, this.selectedShape);
    if (!this.vm.legalMoves.has(move)) return false;
    this.send({ type: 'HumanMove', column, shape: this.selectedShape });
    return true;
  }

  resign(): boolean {
    if (this.vm === null || this.vm.gameOver || this.humanSeats.size === 0) return false;
    this.send({ type: 'Resign' });
    return true;
  }
}
