from time import perf_counter as time
import sys
import warnings

import pdoc
import pdoc.web

MODULES = (
    "scenariorisk",
    "!scenariorisk.docs",
    "!scenariorisk.commands",
    "!scenariorisk.data",
)
"""pdoc module specs: the package without its CLI and docs tooling."""


def local(*args, **kwargs):
    """
    Run a web server to preview the documentation.
    """
    x1 = time()
    ip = "localhost"
    port = 8080
    pdoc.render.configure(docformat="google", math=True)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        httpd = pdoc.web.DocServer((ip, port), list(MODULES))
    x2 = time()
    url = f"http://{ip}:{httpd.server_port}"
    print(f"server ready: {url}", file=sys.stderr)
    print(f"render time: {(x2 - x1) * 1000:.2f} ms", file=sys.stderr)
    print("\nPress Ctrl+C to stop", file=sys.stderr)
    pdoc.web.open_browser(url)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            httpd.serve_forever()
    except KeyboardInterrupt:
        httpd.server_close()
