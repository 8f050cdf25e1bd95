"""Entry point: `fec-model-server` or `python -m fec_model_server`."""

import argparse

import uvicorn

from fec_model_server.app import create_app
from fec_model_server.config import STUB, ServerConfig


def main():
    parser = argparse.ArgumentParser(
        description="Serve /generate and /classify for the fec-forge pipeline."
    )
    parser.add_argument("--generator", default=STUB,
                        help="seq2seq checkpoint id, or STUB (default)")
    parser.add_argument("--classifier", default=STUB,
                        help="3-way classifier checkpoint id, or STUB (default)")
    parser.add_argument("--device", default="cpu", help="cpu, cuda, cuda:0, ...")
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8400)
    parser.add_argument("--max-batch-size", type=int, default=16)
    args = parser.parse_args()

    config = ServerConfig(
        generator=args.generator,
        classifier=args.classifier,
        device=args.device,
        port=args.port,
        max_batch_size=args.max_batch_size,
    )
    uvicorn.run(create_app(config), host=args.host, port=config.port)


if __name__ == "__main__":
    main()
