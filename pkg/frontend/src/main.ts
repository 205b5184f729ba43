import { App } from './app.js';

declare global {
  interface Window {
    app: App;
  }
}

window.addEventListener('DOMContentLoaded', () => {
  window.app = new App();
});

export {};
