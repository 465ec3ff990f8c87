"""Static file server for the cluster-labeling UI.

Serves the built single-page app, exposes the clusters-for-labeling JSON at
/clusters.json, and accepts the exported label map as a POST to /labels so
the browser can hand the file back without any backend state.
"""

from __future__ import annotations

import json
import logging
from http.server import SimpleHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

logger = logging.getLogger(__name__)


def make_handler(ui_dir: Path, clusters_path: Path, labels_out: Path | None):
    class LabelerHandler(SimpleHTTPRequestHandler):
        def __init__(self, *args, **kwargs):
            super().__init__(*args, directory=str(ui_dir), **kwargs)

        def log_message(self, fmt, *args):
            logger.debug("%s " + fmt, self.address_string(), *args)

        def do_GET(self):
            if self.path.split("?", 1)[0] == "/clusters.json":
                body = clusters_path.read_bytes()
                self.send_response(200)
                self.send_header("Content-Type", "application/json; charset=utf-8")
                self.send_header("Content-Length", str(len(body)))
                self.end_headers()
                self.wfile.write(body)
                return
            super().do_GET()

        def do_POST(self):
            if self.path.split("?", 1)[0] != "/labels":
                self.send_error(404)
                return
            length = int(self.headers.get("Content-Length", "0"))
            body = self.rfile.read(length)
            try:
                parsed = json.loads(body.decode("utf-8"))
                if not isinstance(parsed, dict):
                    raise ValueError("label map must be a JSON object")
            except (ValueError, UnicodeDecodeError) as exc:
                self.send_response(400)
                payload = json.dumps({"ok": False, "error": str(exc)}).encode("utf-8")
                self.send_header("Content-Type", "application/json")
                self.send_header("Content-Length", str(len(payload)))
                self.end_headers()
                self.wfile.write(payload)
                return
            if labels_out is not None:
                labels_out.write_bytes(body)
            payload = json.dumps({"ok": True}).encode("utf-8")
            self.send_response(200)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(payload)))
            self.end_headers()
            self.wfile.write(payload)

    return LabelerHandler


def serve_labeler(
    ui_dir: Path, clusters_path: Path, labels_out: Path | None, port: int
) -> None:
    handler = make_handler(ui_dir, clusters_path, labels_out)
    with ThreadingHTTPServer(("127.0.0.1", port), handler) as server:
        host, bound_port = server.server_address[:2]
        print(f"labeler at http://{host}:{bound_port}/ (ctrl-c to stop)")
        try:
            server.serve_forever()
        except KeyboardInterrupt:
            pass
