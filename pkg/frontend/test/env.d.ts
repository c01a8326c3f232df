declare module "vitest" {
  export interface ProvidedContext {
    apiBase: string;
  }
}

export {};
