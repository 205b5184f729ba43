/** DOM wiring: renders the view model and feeds clicks to the controller. */

import { MatchController, type MatchSetup } from './controller.js';
import { DEFAULT_PARAMS, type ClientMessage, type ServerMessage } from './protocol.js';
import { type BoardViewModel, type Cell, type Shape, legalColumns, shapeSelectable } from './viewmodel.js';

const PIECE_CLASS: Record<Cell, string> = {
  '.': 'empty',
  w: 'white round',
  W: 'white square',
  r: 'red round',
  R: 'red square',
};

function element<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (!found) throw new Error(`missing element #${id}`);
  return found as T;
}

export class App {
  private socket: WebSocket | null = null;
  private controller: MatchController;
  private board = element<HTMLDivElement>('board');
  private banner = element<HTMLDivElement>('banner');
  private status = element<HTMLDivElement>('status');
  private log = element<HTMLUListElement>('thinking-log');
  private shapeButtons: Record<Shape, HTMLButtonElement> = {
    round: element<HTMLButtonElement>('shape-round'),
    square: element<HTMLButtonElement>('shape-square'),
  };

  constructor() {
    this.controller = new MatchController((message) => this.sendToSocket(message), {
      onState: (vm) => this.renderBoard(vm),
      onThinking: (agent, info) => this.appendLog(`${agent}: ${info}`),
      onError: (reason) => this.showStatus(`server: ${reason}`),
    });
    element<HTMLFormElement>('setup-form').addEventListener('submit', (event) => {
      event.preventDefault();
      this.startMatch();
    });
    element<HTMLButtonElement>('resign').addEventListener('click', () => {
      this.controller.resign();
    });
    for (const shape of ['round', 'square'] as const) {
      this.shapeButtons[shape].addEventListener('click', () => {
        this.controller.selectShape(shape);
        if (this.controller.vm) this.renderBoard(this.controller.vm);
      });
    }
  }

  private sendToSocket(message: ClientMessage): void {
    if (this.socket && this.socket.readyState === WebSocket.OPEN) {
      this.socket.send(JSON.stringify(message));
    } else {
      this.showStatus('not connected');
    }
  }

  private setupFromForm(): MatchSetup {
    const seat = (id: string) => element<HTMLSelectElement>(id).value as 'human' | 'agent';
    const text = (id: string) => element<HTMLInputElement>(id).value.trim();
    const num = (id: string) => parseInt(element<HTMLInputElement>(id).value, 10);
    return {
      whiteSeat: seat('white-seat'),
      redSeat: seat('red-seat'),
      whiteAgent: text('white-agent'),
      redAgent: text('red-agent'),
      whiteParams: text('white-params'),
      redParams: text('red-params'),
      params: {
        rows: num('rows'),
        cols: num('cols'),
        win: num('win'),
        squares: num('squares'),
        rounds: num('rounds'),
        time_limit_ms: num('time-limit'),
      },
    };
  }

  private startMatch(): void {
    const setup = this.setupFromForm();
    this.log.replaceChildren();
    this.banner.textContent = '';
    this.banner.className = 'banner hidden';
    const connectAndStart = () => {
      const problems = this.controller.start(setup);
      if (problems.length > 0) this.showStatus(problems.join('; '));
      else this.showStatus('match started');
    };
    if (this.socket && this.socket.readyState === WebSocket.OPEN) {
      this.socket.close();
    }
    const protocol = location.protocol === 'https:' ? 'wss' : 'ws';
    this.socket = new WebSocket(`${protocol}://${location.host}/ws`);
    this.socket.onopen = connectAndStart;
    this.socket.onmessage = (event) => {
      this.controller.receive(JSON.parse(event.data) as ServerMessage);
    };
    this.socket.onclose = () => this.showStatus('disconnected');
    this.socket.onerror = () => this.showStatus('connection error');
  }

  private renderBoard(vm: BoardViewModel): void {
    const humanTurn = this.controller.humanTurn;
    const playable = humanTurn ? legalColumns(vm, this.controller.selectedShape) : new Set<number>();
    this.board.style.gridTemplateColumns = `repeat(${vm.cols}, var(--cell))`;
    this.board.replaceChildren();
    // Render top row first so row 0 lands at the bottom of the flow.
    for (let row = vm.rows - 1; row >= 0; row--) {
      for (let col = 0; col < vm.cols; col++) {
        const cell = document.createElement('button');
        const piece = vm.grid[row]![col]!;
        cell.className = `cell ${PIECE_CLASS[piece]}`;
        if (vm.winningCells.has(`${row},${col}`)) cell.classList.add('winning');
        cell.disabled = !playable.has(col);
        cell.addEventListener('click', () => {
          this.controller.clickColumn(col);
        });
        this.board.appendChild(cell);
      }
    }
    for (const shape of ['round', 'square'] as const) {
      const button = this.shapeButtons[shape];
      button.disabled = vm.gameOver || !shapeSelectable(vm, shape);
      button.classList.toggle('selected', this.controller.selectedShape === shape);
    }
    this.renderReserves(vm);
    this.status.textContent = vm.outcomeText;
    if (vm.gameOver) {
      this.banner.textContent = vm.outcomeText;
      this.banner.className = 'banner';
    }
  }

  private renderReserves(vm: BoardViewModel): void {
    element<HTMLSpanElement>('white-reserves').textContent =
      `round ${vm.reserves.White.round} / square ${vm.reserves.White.square}`;
    element<HTMLSpanElement>('red-reserves').textContent =
      `round ${vm.reserves.Red.round} / square ${vm.reserves.Red.square}`;
  }

  private appendLog(line: string): void {
    const item = document.createElement('li');
    item.textContent = line;
    this.log.appendChild(item);
    this.log.scrollTop = this.log.scrollHeight;
  }

  private showStatus(text: string): void {
    this.status.textContent = text;
  }
}
