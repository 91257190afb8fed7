#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
TSFRAC v1.0 - Aplicação Principal
CLI de cálculo fracionário de Riemann–Liouville em escalas de tempo

Códigos de saída: 0 ok, 2 validação, 3 domínio numérico, 4 não convergência,
5 verificação reprovada. Todo erro sai em uma linha `error:<código>:<tipo>: msg`.
"""

import logging
import os
import sys

import click
from dotenv import load_dotenv

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

# Carrega variáveis de ambiente
load_dotenv()

from config import settings  # noqa: E402
from routes.operators import fracder_command, fracint_command, gamma_command  # noqa: E402
from routes.solve import solve_command  # noqa: E402
from routes.verify import verify_command  # noqa: E402
from services.errors import TsfracError  # noqa: E402
from services.run_archive import run_archive  # noqa: E402

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def configure_logging(level: str) -> None:
    """Logs sempre no stderr; stdout fica reservado a CSV/JSON"""
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.WARNING),
        format=LOG_FORMAT,
        stream=sys.stderr,
        force=True,
    )


class TsfracGroup(click.Group):
    """Grupo que converte exceções em linha de erro + código de saída"""

    def main(self, args=None, prog_name=None, complete_var=None, standalone_mode=True, **extra):
        try:
            result = super().main(
                args=args,
                prog_name=prog_name,
                complete_var=complete_var,
                standalone_mode=False,
                **extra,
            )
            code = result if isinstance(result, int) else 0
        except TsfracError as e:
            logger.debug(f"Falha tratada: {e!r}")
            click.echo(e.cli_line(), err=True)
            code = e.exit_code
        except click.exceptions.Exit as e:
            code = e.exit_code
        except click.ClickException as e:
            click.echo(f"error:2:usage: {e.format_message()}", err=True)
            code = 2
        except click.exceptions.Abort:
            click.echo("error:1:aborted: interrompido", err=True)
            code = 1
        if standalone_mode:
            sys.exit(code)
        return code


@click.group(cls=TsfracGroup)
@click.version_option("1.0.0", prog_name="tsfrac")
@click.option("--log-level", default=None, help="Nível de log (padrão: TSFRAC_LOG_LEVEL ou WARNING)")
def cli(log_level):
    """Cálculo fracionário em escalas de tempo"""
    configure_logging(log_level or settings.log_level)
    run_archive.start_session()


cli.add_command(gamma_command)
cli.add_command(fracint_command)
cli.add_command(fracder_command)
cli.add_command(solve_command)
cli.add_command(verify_command)


def main(argv=None) -> int:
    return cli.main(args=argv, prog_name="tsfrac", standalone_mode=False)


if __name__ == "__main__":
    cli.main(prog_name="tsfrac")
