import argparse
import sys
from pathlib import Path
from typing import List, Optional

from src.configs import get_settings, use_config_file

EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lipcurrents-lab",
        description="Suites numériques sur les applications lipschitziennes, les courants et leur homologie",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="Exécute un ou plusieurs scénarios")
    run.add_argument("--scenario", action="append", required=True, help="Fichier de scénario JSON (répétable)")
    run.add_argument("--out", required=True, help="Répertoire des rapports")
    run.add_argument("--workers", type=int, default=None, help="Processus parallèles (BATCH_MAX_WORKERS par défaut)")
    run.add_argument("--config", default=None, help="Fichier de configuration JSON (lab.config.json par défaut)")

    catalog = commands.add_parser("list", help="Catalogue des suites")
    catalog.add_argument("--json", action="store_true", help="Sortie JSON avec schémas de paramètres")

    validate = commands.add_parser("validate", help="Valide un scénario sans l'exécuter")
    validate.add_argument("--scenario", required=True)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)

    config = getattr(args, "config", None)
    if config:
        if not Path(config).is_file():
            sys.stderr.write(f"Configuration file not found: {config}\n")
            return EXIT_USAGE
        use_config_file(config)

    # Imported after the configuration is chosen
    from src.core.logger import app_logger
    from src.interface.controllers import suites_controller

    settings = get_settings()
    app_logger.debug(f"Starting {settings.SERVICE_NAME} ({settings.ENVIRONMENT})")

    if args.command == "run":
        workers = args.workers if args.workers is not None else settings.BATCH_MAX_WORKERS
        return suites_controller.run_suites(args.scenario, args.out, workers=workers, config=config)
    if args.command == "list":
        return suites_controller.list_suites(as_json=args.json)
    return suites_controller.validate_scenario(args.scenario)


if __name__ == "__main__":
    sys.exit(main())
