/** JSON shapes served by the dialog service. Mirrors the wire format only;
 * the client holds no engine logic of its own. */
export {};
